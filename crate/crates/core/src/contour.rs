//! Quadrature for complex line integrals over collections of closed curves.
//!
//! On circles the trapezoidal rule on equispaced nodes is spectrally
//! accurate for integrands analytic near the contour, so that is the
//! workhorse. A dyadically graded Gauss-Legendre panel scheme handles
//! integrands that are only Holder-continuous at one boundary point. The
//! residue calculus evaluator is kept fully independent of the quadrature
//! path so the two can cross-check each other.

use num_complex::Complex64;

use crate::domain::{Circle, DomainSpec};
use crate::error::{Error, Result};
use crate::holomap::{HoloMap, MAX_DERIV_ORDER};
use crate::roots::RootMultiset;

/// Minimum distance a pole may have from the boundary in
/// [`residue_reference`].
pub const MIN_POLE_BOUNDARY_DIST: f64 = 1e-6;

/// One closed curve: equispaced parameter nodes on `[0, 1)`, node points,
/// derivative values per unit parameter, and an orientation sign.
#[derive(Debug, Clone)]
pub struct Curve {
    params: Vec<f64>,
    points: Vec<Complex64>,
    derivs: Vec<Complex64>,
    orientation: f64,
}

impl Curve {
    /// A circle traversed counterclockwise in the parameter, with the
    /// orientation carried as a sign.
    pub fn circle(circle: Circle, nodes: usize, orientation: f64) -> Self {
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut params = Vec::with_capacity(nodes);
        let mut points = Vec::with_capacity(nodes);
        let mut derivs = Vec::with_capacity(nodes);
        for k in 0..nodes {
            let theta = k as f64 / nodes as f64;
            let dir = Complex64::from_polar(1.0, two_pi * theta);
            params.push(theta);
            points.push(circle.center + circle.radius * dir);
            derivs.push(Complex64::new(0.0, two_pi * circle.radius) * dir);
        }
        Curve {
            params,
            points,
            derivs,
            orientation,
        }
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn derivs(&self) -> &[Complex64] {
        &self.derivs
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }
}

/// An oriented collection of closed curves with quadrature nodes.
#[derive(Debug, Clone)]
pub struct Contour {
    curves: Vec<Curve>,
    nodes_per_curve: usize,
}

impl Contour {
    pub fn new(curves: Vec<Curve>, nodes_per_curve: usize) -> Self {
        Contour {
            curves,
            nodes_per_curve,
        }
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn nodes_per_curve(&self) -> usize {
        self.nodes_per_curve
    }

    /// Trapezoidal rule over every curve:
    /// `sum_curves sign * (1/N) * sum_k f(t_k) t'_k`,
    /// compensated summation in canonical node order.
    pub fn integrate<F>(&self, mut f: F) -> Result<Complex64>
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let mut total = Complex64::new(0.0, 0.0);
        for (ci, curve) in self.curves.iter().enumerate() {
            let mut sum = KahanC64::new();
            for (k, (&t, &dt)) in curve.points.iter().zip(curve.derivs.iter()).enumerate() {
                let v = f(t);
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::IntegrandNotFinite {
                        curve: ci,
                        node: k,
                        point: t,
                    });
                }
                sum.add(v * dt);
            }
            total += curve.orientation * sum.value() / curve.points.len() as f64;
        }
        Ok(total)
    }
}

/// Kahan-compensated complex accumulator.
struct KahanC64 {
    sum: Complex64,
    comp: Complex64,
}

impl KahanC64 {
    fn new() -> Self {
        KahanC64 {
            sum: Complex64::new(0.0, 0.0),
            comp: Complex64::new(0.0, 0.0),
        }
    }

    fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Outcome of an adaptive quadrature: the accepted value, the difference
/// between the last two resolutions, and the node count actually used.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub est_error: f64,
    pub nodes: usize,
}

/// Node cap for adaptive doubling.
pub const ADAPTIVE_NODE_CAP: usize = 1 << 16;

/// Evaluates at N and 2N nodes, doubling until the difference is below
/// `tolerance`; fails loudly at the node cap instead of returning a silently
/// inaccurate value.
pub fn integrate_adaptive<M, F>(
    make_contour: M,
    mut f: F,
    tolerance: f64,
    start_nodes: usize,
) -> Result<QuadResult>
where
    M: Fn(usize) -> Result<Contour>,
    F: FnMut(Complex64) -> Complex64,
{
    let mut nodes = start_nodes.max(16);
    let mut value = make_contour(nodes)?.integrate(&mut f)?;
    loop {
        let next_nodes = nodes * 2;
        if next_nodes > ADAPTIVE_NODE_CAP {
            return Err(Error::QuadratureNotConverged {
                est_error: f64::INFINITY,
                nodes,
                tolerance,
            });
        }
        let next = make_contour(next_nodes)?.integrate(&mut f)?;
        let diff = (next - value).norm();
        if diff <= tolerance {
            return Ok(QuadResult {
                value: next,
                est_error: diff,
                nodes: next_nodes,
            });
        }
        value = next;
        nodes = next_nodes;
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_deriv(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature on a full circle for integrands with a single boundary
/// singularity at angle `singular_angle`: dyadically refined panels toward
/// the singular point from both sides, fixed-order Gauss-Legendre per panel
/// (each dyadic panel split in two). The Gauss nodes are interior, so the
/// singular point itself is never evaluated.
pub fn integrate_circle_graded<F>(
    circle: Circle,
    singular_angle: f64,
    levels: usize,
    gl_order: usize,
    mut f: F,
) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    let (gl_nodes, gl_weights) = gauss_legendre(gl_order);
    let half = std::f64::consts::PI;
    let mut panels: Vec<(f64, f64)> = Vec::with_capacity(2 * levels + 2);
    // from the singular angle forward and backward, dyadic toward it
    for j in (1..=levels).rev() {
        let lo = half * 0.5f64.powi(j as i32);
        let hi = half * 0.5f64.powi(j as i32 - 1);
        panels.push((lo, hi));
    }
    let tiny = half * 0.5f64.powi(levels as i32);
    panels.push((0.0, tiny));
    let mut total = KahanC64::new();
    for &(lo, hi) in &panels {
        for (a, b) in [
            (singular_angle + lo, singular_angle + hi),
            (singular_angle + 2.0 * half - hi, singular_angle + 2.0 * half - lo),
        ] {
            let mid = 0.5 * (a + b);
            for (p, q) in [(a, mid), (mid, b)] {
                let c = 0.5 * (q + p);
                let h = 0.5 * (q - p);
                for (&x, &w) in gl_nodes.iter().zip(gl_weights.iter()) {
                    let theta = c + h * x;
                    let dir = Complex64::from_polar(1.0, theta);
                    let t = circle.center + circle.radius * dir;
                    let dt = Complex64::new(0.0, circle.radius) * dir;
                    let v = f(t);
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(Error::IntegrandNotFinite {
                            curve: 0,
                            node: 0,
                            point: t,
                        });
                    }
                    total.add(v * dt * (w * h));
                }
            }
        }
    }
    Ok(total.value())
}

/// Reference value of `∮ u(t) / Π_l (t - v_l)^(m·mult_l) dt` over the
/// positively oriented boundary of `d`, by residues.
///
/// The residue at each cluster representative is the Taylor coefficient of
/// order `(m·mult - 1)` of the remaining factor, computed from closed-form
/// derivatives, entirely independent of the quadrature path.
pub fn residue_reference(
    u: &HoloMap,
    poles: &RootMultiset,
    m: usize,
    d: &DomainSpec,
) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::InvalidInput("residue_reference needs m >= 1".into()));
    }
    let clusters = poles.clusters();
    for cl in clusters {
        let dist = d.boundary_distance(cl.center);
        if dist < MIN_POLE_BOUNDARY_DIST {
            return Err(Error::PoleNearBoundary {
                pole: cl.center,
                dist,
                guard: MIN_POLE_BOUNDARY_DIST,
            });
        }
        if m * cl.multiplicity > MAX_DERIV_ORDER {
            return Err(Error::UnsupportedOrder {
                order: m * cl.multiplicity,
                max: MAX_DERIV_ORDER,
            });
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (j, cl) in clusters.iter().enumerate() {
        let order = m * cl.multiplicity;
        // Taylor coefficients of u(t) * prod_{l != j} (t - v_l)^(-m mult_l)
        // around v_j, up to x^(order-1).
        let mut series = u.taylor(cl.center, order - 1)?;
        for (l, other) in clusters.iter().enumerate() {
            if l == j {
                continue;
            }
            let factor = negative_power_series(cl.center - other.center, m * other.multiplicity, order - 1);
            series = truncated_product(&series, &factor, order - 1);
        }
        sum += series[order - 1];
    }
    Ok(Complex64::new(0.0, 2.0 * std::f64::consts::PI) * sum)
}

/// Taylor coefficients of `(x + w)^(-p)` in `x` up to `max_order`:
/// `w^(-p) * binom(-p, k) * w^(-k)`.
fn negative_power_series(w: Complex64, p: usize, max_order: usize) -> Vec<Complex64> {
    let mut coeffs = Vec::with_capacity(max_order + 1);
    let mut current = w.powi(-(p as i32));
    coeffs.push(current);
    for k in 0..max_order {
        // binom(-p, k+1)/binom(-p, k) = -(p + k)/(k + 1)
        current = current * (-((p + k) as f64) / (k as f64 + 1.0)) / w;
        coeffs.push(current);
    }
    coeffs
}

fn truncated_product(a: &[Complex64], b: &[Complex64], max_order: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); max_order + 1];
    for (i, &ai) in a.iter().enumerate().take(max_order + 1) {
        for (k, &bk) in b.iter().enumerate().take(max_order + 1 - i) {
            out[i + k] += ai * bk;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootCluster;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn two_pi_i() -> Complex64 {
        c(0.0, 2.0 * std::f64::consts::PI)
    }

    #[test]
    fn constants_integrate_to_zero() {
        let d = DomainSpec::unit_disc();
        let contour = d.boundary_contour(64).unwrap();
        let v = contour.integrate(|_| c(3.0, -1.0)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn cauchy_kernel_on_unit_circle() {
        let d = DomainSpec::unit_disc();
        let contour = d.boundary_contour(64).unwrap();
        let v = contour.integrate(|t| t.inv()).unwrap();
        assert!((v - two_pi_i()).norm() < 1e-12);
    }

    #[test]
    fn analytic_integrand_no_residue() {
        let d = DomainSpec::unit_disc();
        let contour = d.boundary_contour(64).unwrap();
        let v = contour.integrate(|t| t.powu(5)).unwrap();
        assert!(v.norm() < 1e-13);
    }

    #[test]
    fn winding_number_with_hole() {
        let d = DomainSpec::new(
            Circle::new(c(0.0, 0.0), 1.0),
            vec![Circle::new(c(0.3, 0.0), 0.2)],
        )
        .unwrap();
        let contour = d.boundary_contour(256).unwrap();
        // a inside the domain -> 2 pi i; a in the hole or outside -> 0
        let inside = c(-0.5, 0.0);
        let in_hole = c(0.3, 0.05);
        let outside = c(1.4, 0.2);
        let wind = |a: Complex64| contour.integrate(|t| (t - a).inv()).unwrap();
        assert!((wind(inside) - two_pi_i()).norm() < 1e-10);
        assert!(wind(in_hole).norm() < 1e-10);
        assert!(wind(outside).norm() < 1e-10);
    }

    #[test]
    fn integrand_error_reports_node() {
        let d = DomainSpec::unit_disc();
        let contour = d.boundary_contour(16).unwrap();
        let err = contour
            .integrate(|t| {
                if (t - c(1.0, 0.0)).norm() < 1e-12 {
                    c(f64::NAN, 0.0)
                } else {
                    t
                }
            })
            .unwrap_err();
        assert!(matches!(err, Error::IntegrandNotFinite { curve: 0, node: 0, .. }));
    }

    #[test]
    fn adaptive_doubling_converges() {
        let d = DomainSpec::unit_disc();
        let a = c(0.4, 0.3);
        let r = integrate_adaptive(
            |n| d.boundary_contour(n),
            |t| (t - a).inv(),
            1e-12,
            16,
        )
        .unwrap();
        assert!((r.value - two_pi_i()).norm() < 1e-11);
        assert!(r.est_error <= 1e-12);
    }

    #[test]
    fn adaptive_fails_loudly_on_boundary_pole() {
        let d = DomainSpec::unit_disc();
        let a = c(1.0, 0.0); // pole on the contour
        let err = integrate_adaptive(|n| d.boundary_contour(n), |t| (t - a).inv(), 1e-14, 16);
        assert!(err.is_err());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (nodes, weights) = gauss_legendre(8);
        // exact for degree <= 15: check x^14 over [-1,1] = 2/15
        let v: f64 = nodes
            .iter()
            .zip(weights.iter())
            .map(|(&x, &w)| w * x.powi(14))
            .sum();
        assert!((v - 2.0 / 15.0).abs() < 1e-14);
        let total: f64 = weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn graded_circle_matches_trapezoid_for_analytic() {
        let circle = Circle::new(c(0.0, 0.0), 1.0);
        let a = c(0.2, 0.1);
        let v = integrate_circle_graded(circle, 0.0, 40, 24, |t| (t - a).inv()).unwrap();
        assert!((v - two_pi_i()).norm() < 1e-12);
    }

    #[test]
    fn graded_circle_handles_holder_integrand() {
        // (1-t)^0.5 / (t-0.5): residue at 0.5 gives 2 pi i sqrt(0.5)
        let circle = Circle::new(c(0.0, 0.0), 1.0);
        let v = integrate_circle_graded(circle, 0.0, 48, 24, |t| {
            (c(1.0, 0.0) - t).sqrt() / (t - c(0.5, 0.0))
        })
        .unwrap();
        let expect = two_pi_i() * (0.5f64).sqrt();
        assert!((v - expect).norm() < 1e-10);
    }

    #[test]
    fn residue_single_simple_pole() {
        let d = DomainSpec::unit_disc();
        let u = HoloMap::constant(c(1.0, 0.0));
        let poles = RootMultiset::from_clusters(
            vec![RootCluster {
                center: c(0.3, -0.2),
                multiplicity: 1,
            }],
            0.0,
        )
        .unwrap();
        let v = residue_reference(&u, &poles, 1, &d).unwrap();
        assert!((v - two_pi_i()).norm() < 1e-14);
    }

    #[test]
    fn residue_partial_fractions_by_hand() {
        // u(t) = t, simple poles {0, 0.5}: 2 pi i (0/(0-0.5) + 0.5/(0.5-0))
        let d = DomainSpec::unit_disc();
        let u = HoloMap::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let poles = RootMultiset::from_clusters(
            vec![
                RootCluster {
                    center: c(0.0, 0.0),
                    multiplicity: 1,
                },
                RootCluster {
                    center: c(0.5, 0.0),
                    multiplicity: 1,
                },
            ],
            0.0,
        )
        .unwrap();
        let v = residue_reference(&u, &poles, 1, &d).unwrap();
        assert!((v - two_pi_i()).norm() < 1e-13);
    }

    #[test]
    fn residue_double_pole_of_constant_is_zero() {
        let d = DomainSpec::unit_disc();
        let u = HoloMap::constant(c(1.0, 0.0));
        let poles = RootMultiset::from_clusters(
            vec![RootCluster {
                center: c(0.0, 0.0),
                multiplicity: 2,
            }],
            0.0,
        )
        .unwrap();
        let v = residue_reference(&u, &poles, 1, &d).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn residue_guards() {
        let d = DomainSpec::unit_disc();
        let u = HoloMap::constant(c(1.0, 0.0));
        let near = RootMultiset::from_clusters(
            vec![RootCluster {
                center: c(0.9999999, 0.0),
                multiplicity: 1,
            }],
            0.0,
        )
        .unwrap();
        assert!(matches!(
            residue_reference(&u, &near, 1, &d),
            Err(Error::PoleNearBoundary { .. })
        ));
        let heavy = RootMultiset::from_clusters(
            vec![RootCluster {
                center: c(0.0, 0.0),
                multiplicity: 7,
            }],
            0.0,
        )
        .unwrap();
        assert!(matches!(
            residue_reference(&u, &heavy, 2, &d),
            Err(Error::UnsupportedOrder { order: 14, max: 12 })
        ));
    }
}
