//! Induced maps on symmetric products and the Cauchy-type boundary
//! operators behind them.
//!
//! The induced map of a one-variable holomorphic function is computed by two
//! independent routes: directly (solve for the fiber, apply the function
//! rootwise, re-symmetrize) and through boundary integrals of
//! `phi^m q'/q` followed by the Newton transform. The agreement of the two
//! routes is the main cross-check of the whole crate.
//!
//! Conventions: `g_op` carries the `1/(2 pi i)` normalization (so `g = 1`
//! integrates to `n`), while `j_op` is the bare integral
//! `∮ t^gamma u(t) / q(s;t)^m dt`.

use num_complex::Complex64;
use serde::Serialize;

use crate::contour::Contour;
use crate::domain::{Circle, DomainSpec};
use crate::error::{Error, Result};
use crate::holomap::HoloMap;
use crate::roots::{roots_of, RootCluster, RootMultiset};
use crate::sympoly::{elem_sym, eval_q_and_dq, newton_p, PowerSumPoint, SymPoint};
use crate::symprod::diagonal_embed;

/// Default guard distance between poles of the integrand and the boundary.
/// Evaluation closer than this is refused rather than extrapolated.
pub const DEFAULT_BOUNDARY_GUARD: f64 = 1e-3;

/// Which route produced an [`InducedMapResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Direct,
    Integral,
}

/// Value of an induced map at one point.
#[derive(Debug, Clone, Serialize)]
pub struct InducedMapResult {
    pub value: SymPoint,
    pub route: Route,
    /// Quadrature nodes per boundary curve (0 for the direct route).
    pub quadrature_nodes: usize,
    /// For the integral route, the max-norm difference between the values
    /// computed with `nodes` and `nodes/2` points; 0 for the direct route.
    pub est_error: f64,
}

/// Applies `phi` to the fiber of `s` and re-symmetrizes.
pub fn sigma_phi_direct(phi: &HoloMap, s: &SymPoint) -> Result<InducedMapResult> {
    let roots = roots_of(s)?;
    let mut images = Vec::with_capacity(roots.n());
    for &z in roots.roots() {
        if !phi.analytic_at(z) {
            return Err(Error::NotAnalytic {
                point: z,
                what: "root outside the map's domain of analyticity".into(),
            });
        }
        images.push(phi.eval(z)?);
    }
    Ok(InducedMapResult {
        value: elem_sym(&images)?,
        route: Route::Direct,
        quadrature_nodes: 0,
        est_error: 0.0,
    })
}

fn check_roots_inside(d: &DomainSpec, roots: &RootMultiset, guard: f64) -> Result<()> {
    for &z in roots.roots() {
        let dist = d.boundary_distance(z);
        if dist < guard {
            return Err(Error::PoleNearBoundary {
                pole: z,
                dist,
                guard,
            });
        }
    }
    Ok(())
}

fn eval_or_nan(g: &HoloMap, t: Complex64) -> Complex64 {
    g.eval(t).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

/// `(1/(2 pi i)) ∮ g(t) q'(s;t)/q(s;t) dt` over the boundary of `d`.
///
/// For `s` with distinct roots this is the sum of `g` over the fiber; in
/// particular `g = 1` gives `n`.
pub fn g_op(g: &HoloMap, s: &SymPoint, d: &DomainSpec, nodes: usize) -> Result<Complex64> {
    let roots = roots_of(s)?;
    check_roots_inside(d, &roots, DEFAULT_BOUNDARY_GUARD)?;
    let contour = d.boundary_contour(nodes)?;
    g_op_on_contour(g, s, &contour)
}

fn g_op_on_contour(g: &HoloMap, s: &SymPoint, contour: &Contour) -> Result<Complex64> {
    let raw = contour.integrate(|t| {
        let (q, q_t) = eval_q_and_dq(s, t);
        eval_or_nan(g, t) * q_t / q
    })?;
    Ok(raw / Complex64::new(0.0, 2.0 * std::f64::consts::PI))
}

/// The induced map through the boundary-integral route: power sums of the
/// images from `∮ phi^m q'/q`, then the Newton transform back to elementary
/// symmetric coordinates.
pub fn sigma_phi_integral(
    phi: &HoloMap,
    s: &SymPoint,
    d: &DomainSpec,
    nodes: usize,
) -> Result<InducedMapResult> {
    let n = s.n();
    let roots = roots_of(s)?;
    check_roots_inside(d, &roots, DEFAULT_BOUNDARY_GUARD)?;

    let coarse_nodes = (nodes / 2).max(16);
    let fine = d.boundary_contour(nodes)?;
    let coarse = d.boundary_contour(coarse_nodes)?;
    let mut psi_fine = Vec::with_capacity(n);
    let mut psi_coarse = Vec::with_capacity(n);
    for m in 1..=n {
        let g_m = HoloMap::compose(HoloMap::monomial(m), phi.clone());
        psi_fine.push(g_op_on_contour(&g_m, s, &fine)?);
        psi_coarse.push(g_op_on_contour(&g_m, s, &coarse)?);
    }
    let value = newton_p(&PowerSumPoint::new(psi_fine)?)?;
    let value_coarse = newton_p(&PowerSumPoint::new(psi_coarse)?)?;
    Ok(InducedMapResult {
        est_error: value.max_dist(&value_coarse),
        value,
        route: Route::Integral,
        quadrature_nodes: nodes,
    })
}

/// Adaptive form of [`g_op`]: doubles the node count until the value moves
/// by less than `tolerance`, and errors out with the last estimate instead
/// of returning an unconverged value.
pub fn g_op_adaptive(
    g: &HoloMap,
    s: &SymPoint,
    d: &DomainSpec,
    tolerance: f64,
    start_nodes: usize,
) -> Result<crate::contour::QuadResult> {
    let roots = roots_of(s)?;
    check_roots_inside(d, &roots, DEFAULT_BOUNDARY_GUARD)?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let raw = crate::contour::integrate_adaptive(
        |n| d.boundary_contour(n),
        |t| {
            let (q, q_t) = eval_q_and_dq(s, t);
            eval_or_nan(g, t) * q_t / q
        },
        tolerance * two_pi,
        start_nodes,
    )?;
    Ok(crate::contour::QuadResult {
        value: raw.value / Complex64::new(0.0, two_pi),
        est_error: raw.est_error / two_pi,
        nodes: raw.nodes,
    })
}

/// Adaptive form of [`j_op`], same doubling control.
pub fn j_op_adaptive(
    u: &HoloMap,
    s: &SymPoint,
    m: usize,
    weight_exponent: usize,
    d: &DomainSpec,
    tolerance: f64,
    start_nodes: usize,
) -> Result<crate::contour::QuadResult> {
    if m == 0 {
        return Err(Error::InvalidInput("j_op needs m >= 1".into()));
    }
    let roots = roots_of(s)?;
    check_roots_inside(d, &roots, DEFAULT_BOUNDARY_GUARD)?;
    crate::contour::integrate_adaptive(
        |n| d.boundary_contour(n),
        |t| {
            let (q, _) = eval_q_and_dq(s, t);
            t.powu(weight_exponent as u32) * eval_or_nan(u, t) / q.powu(m as u32)
        },
        tolerance,
        start_nodes,
    )
}

/// `∮ t^gamma u(t) / q(s;t)^m dt` over the boundary of `d`, without the
/// `1/(2 pi i)` normalization.
pub fn j_op(
    u: &HoloMap,
    s: &SymPoint,
    m: usize,
    weight_exponent: usize,
    d: &DomainSpec,
    nodes: usize,
) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::InvalidInput("j_op needs m >= 1".into()));
    }
    let roots = roots_of(s)?;
    check_roots_inside(d, &roots, DEFAULT_BOUNDARY_GUARD)?;
    let contour = d.boundary_contour(nodes)?;
    contour.integrate(|t| {
        let (q, _) = eval_q_and_dq(s, t);
        t.powu(weight_exponent as u32) * eval_or_nan(u, t) / q.powu(m as u32)
    })
}

/// `∮ u(t) / prod_j (t - z_j)^m dt` over the boundary of `d`; the pullback
/// of [`j_op`] to the cartesian product, evaluated as its own code path.
pub fn t_n_op(
    u: &HoloMap,
    z: &[Complex64],
    m: usize,
    d: &DomainSpec,
    nodes: usize,
) -> Result<Complex64> {
    if z.is_empty() || m == 0 {
        return Err(Error::InvalidInput("t_n_op needs n >= 1 points and m >= 1".into()));
    }
    let points = RootMultiset::from_roots(z.to_vec(), 0.0)?;
    check_roots_inside(d, &points, DEFAULT_BOUNDARY_GUARD)?;
    // canonical factor order makes the value exactly permutation-invariant
    let ordered = points.roots().to_vec();
    let contour = d.boundary_contour(nodes)?;
    contour.integrate(|t| {
        let mut denom = Complex64::new(1.0, 0.0);
        for &zj in &ordered {
            denom *= (t - zj).powu(m as u32);
        }
        eval_or_nan(u, t) / denom
    })
}

/// A disc with a declared root count, for [`gamma_inverse`].
#[derive(Debug, Clone, Copy)]
pub struct GammaDisc {
    pub center: Complex64,
    pub radius: f64,
    pub multiplicity: usize,
}

/// Recovers the fiber of `s` from contour integrals alone: over each disc
/// boundary, `(1/(2 pi i mult)) ∮ t q'(s;t)/q(s;t) dt` is the barycenter of
/// the roots inside, and equals the root itself when the disc holds a single
/// cluster. No root solving is involved; the declared multiplicities are
/// verified by argument-principle counts first.
pub fn gamma_inverse(
    s: &SymPoint,
    discs: &[GammaDisc],
    d: &DomainSpec,
    nodes: usize,
) -> Result<RootMultiset> {
    let n = s.n();
    if discs.is_empty() {
        return Err(Error::InvalidInput("gamma_inverse needs at least one disc".into()));
    }
    for (i, disc) in discs.iter().enumerate() {
        if !(disc.radius > 0.0 && disc.radius.is_finite()) {
            return Err(Error::BadRadius {
                which: format!("gamma disc {i}"),
                value: disc.radius,
            });
        }
        if d.boundary_distance(disc.center) <= disc.radius {
            return Err(Error::InvalidInput(format!(
                "gamma disc {i} around {} is not strictly inside the domain",
                disc.center
            )));
        }
    }
    for i in 0..discs.len() {
        for j in i + 1..discs.len() {
            let dist = (discs[i].center - discs[j].center).norm();
            if dist <= discs[i].radius + discs[j].radius {
                return Err(Error::InvalidInput(format!(
                    "gamma discs {i} and {j} have intersecting closures"
                )));
            }
        }
    }
    let declared: usize = discs.iter().map(|disc| disc.multiplicity).sum();
    if declared != n {
        return Err(Error::InvalidInput(format!(
            "gamma disc multiplicities sum to {declared}, expected n = {n}"
        )));
    }

    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut clusters = Vec::with_capacity(discs.len());
    for (i, disc) in discs.iter().enumerate() {
        let circle = Circle::new(disc.center, disc.radius);
        let contour = Contour::new(vec![crate::contour::Curve::circle(circle, nodes, 1.0)], nodes);
        let count = contour.integrate(|t| {
            let (q, q_t) = eval_q_and_dq(s, t);
            q_t / q
        })? / two_pi_i;
        let rounded = count.re.round();
        if (count - Complex64::new(rounded, 0.0)).norm() > 1e-6
            || rounded as i64 != disc.multiplicity as i64
        {
            return Err(Error::WrongDisc {
                disc: i,
                center: disc.center,
                counted: rounded as i64,
                expected: disc.multiplicity,
            });
        }
        let weighted = contour.integrate(|t| {
            let (q, q_t) = eval_q_and_dq(s, t);
            t * q_t / q
        })?;
        clusters.push(RootCluster {
            center: weighted / (two_pi_i * disc.multiplicity as f64),
            multiplicity: disc.multiplicity,
        });
    }
    RootMultiset::from_clusters(clusters, 0.0)
}

/// The one-variable factor recovered from a self-map of a symmetric product.
#[derive(Debug, Clone, Copy)]
pub struct RecoveredFactor {
    /// `phi(w)`, read off the first coordinate on the diagonal.
    pub value: Complex64,
    /// Max-norm mismatch between the map's value and the diagonal image of
    /// the recovered factor.
    pub residual: f64,
}

/// Evaluates a map of symmetric products on the diagonal image of `w` and
/// reads off the one-variable factor: a map of the induced form sends the
/// diagonal into the diagonal, with first coordinate `n * phi(w)`.
///
/// Fails with a consistency residual when the returned point is not the
/// diagonal image of the recovered value within `tol` (relative).
pub fn recover_factor<F>(phi_map: F, w: Complex64, n: usize, tol: f64) -> Result<RecoveredFactor>
where
    F: Fn(&SymPoint) -> Result<SymPoint>,
{
    let image = phi_map(&diagonal_embed(w, n)?)?;
    if image.n() != n {
        return Err(Error::InvalidInput(format!(
            "map returned a point of dimension {}, expected {n}",
            image.n()
        )));
    }
    let value = image.coeffs()[0] / n as f64;
    let expected = diagonal_embed(value, n)?;
    let residual = image.max_dist(&expected);
    let tolerance = tol * image.scale();
    if residual > tolerance {
        return Err(Error::NotInducedMap { residual, tolerance });
    }
    Ok(RecoveredFactor { value, residual })
}
