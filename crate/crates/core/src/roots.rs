//! Root multisets of `q(s;t)`: the fiber of the symmetrization map.
//!
//! The solver is simultaneous Aberth-Ehrlich iteration started on a circle,
//! with a complex Hessenberg QR solve of the companion matrix as fallback.
//! Multiplicity is recovered by tolerance clustering; the tolerance is a
//! visible parameter on every classification API.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ensure_finite_slice, Error, Result};
use crate::sympoly::{canonical_cmp, elem_sym, monic_coeffs, tuple_scale, SymPoint};

/// Tunables for [`roots_of_with`].
#[derive(Debug, Clone, Copy)]
pub struct RootSolveOptions {
    /// Relative clustering tolerance for multiplicity detection.
    pub cluster_tol: f64,
    /// Iteration cap for the Aberth sweep.
    pub max_iterations: usize,
    /// Relative step size below which a root is considered stationary.
    pub step_tol: f64,
}

impl Default for RootSolveOptions {
    fn default() -> Self {
        RootSolveOptions {
            cluster_tol: 1e-6,
            max_iterations: 500,
            step_tol: 1e-14,
        }
    }
}

/// A cluster of nearby roots collapsed to its barycenter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

/// The unordered root tuple of `q(s;t)` with multiplicity clustering.
#[derive(Debug, Clone, Serialize)]
pub struct RootMultiset {
    roots: Vec<Complex64>,
    cluster_tol: f64,
    clusters: Vec<RootCluster>,
}

impl RootMultiset {
    /// Clusters a raw root list at the given relative tolerance.
    pub fn from_roots(mut roots: Vec<Complex64>, cluster_tol: f64) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidInput("root multiset needs n >= 1 roots".into()));
        }
        if !(cluster_tol >= 0.0) {
            return Err(Error::InvalidInput("cluster_tol must be nonnegative".into()));
        }
        ensure_finite_slice(&roots, "RootMultiset roots")?;
        roots.sort_by(canonical_cmp);
        let clusters = cluster_single_linkage(&roots, cluster_tol * tuple_scale(&roots));
        Ok(RootMultiset {
            roots,
            cluster_tol,
            clusters,
        })
    }

    /// Builds a multiset from known cluster representatives (used by the
    /// contour-integral inverse, which recovers barycenters directly).
    pub fn from_clusters(clusters: Vec<RootCluster>, cluster_tol: f64) -> Result<Self> {
        let mut roots = Vec::new();
        for c in &clusters {
            for _ in 0..c.multiplicity {
                roots.push(c.center);
            }
        }
        if roots.is_empty() {
            return Err(Error::InvalidInput("cluster list is empty".into()));
        }
        ensure_finite_slice(&roots, "RootMultiset clusters")?;
        roots.sort_by(canonical_cmp);
        let mut clusters = clusters;
        clusters.sort_by(|a, b| canonical_cmp(&a.center, &b.center));
        Ok(RootMultiset {
            roots,
            cluster_tol,
            clusters,
        })
    }

    /// All roots with multiplicity, in canonical order.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn clusters(&self) -> &[RootCluster] {
        &self.clusters
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    pub fn n(&self) -> usize {
        self.roots.len()
    }

    /// `1 + max |root|`.
    pub fn scale(&self) -> f64 {
        tuple_scale(&self.roots)
    }

    /// Re-derives the clustering at a different tolerance.
    pub fn recluster(&self, cluster_tol: f64) -> Result<Self> {
        RootMultiset::from_roots(self.roots.clone(), cluster_tol)
    }

    /// The multiplicity profile of the clustering.
    pub fn partition_type(&self) -> PartitionType {
        let mut multiplicities: Vec<usize> =
            self.clusters.iter().map(|c| c.multiplicity).collect();
        multiplicities.sort_unstable();
        PartitionType {
            k: self.clusters.len(),
            multiplicities,
        }
    }
}

/// Stratum descriptor: how many distinct values the root tuple takes and
/// with which multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionType {
    /// Number of distinct clusters.
    pub k: usize,
    /// Sorted multiplicities, summing to n.
    pub multiplicities: Vec<usize>,
}

/// Multiplicity profile of a root multiset (stratum classification).
pub fn partition_type(r: &RootMultiset) -> PartitionType {
    r.partition_type()
}

/// All roots of `q(s;t)` with default options.
pub fn roots_of(s: &SymPoint) -> Result<RootMultiset> {
    roots_of_with(s, RootSolveOptions::default())
}

/// All roots of `q(s;t)`.
///
/// Runs the Aberth sweep and falls back to the companion-matrix QR solve if
/// the sweep does not meet the backward-error criterion. Returns an error
/// carrying the best iterate when neither path converges.
pub fn roots_of_with(s: &SymPoint, opts: RootSolveOptions) -> Result<RootMultiset> {
    ensure_finite_slice(s.coeffs(), "roots_of coefficients")?;
    let coeffs = monic_coeffs(s);
    let initial_radius = initial_guess_radius(s);

    let aberth_out = aberth(&coeffs, initial_radius, opts.max_iterations, opts.step_tol);
    let roots = match aberth_out {
        Ok(roots) if residuals_ok(&coeffs, &roots) => roots,
        other => {
            let companion = companion_roots(&coeffs).and_then(|r| {
                let polished = newton_polish(&coeffs, r);
                if residuals_ok(&coeffs, &polished) {
                    Ok(polished)
                } else {
                    Err(not_converged(&coeffs, &polished, opts.max_iterations))
                }
            });
            match (companion, other) {
                (Ok(roots), _) => roots,
                (Err(_), Ok(best)) => return Err(not_converged(&coeffs, &best, opts.max_iterations)),
                (Err(e), Err(_)) => return Err(e),
            }
        }
    };
    let roots = coefficient_match_polish(&coeffs, s, roots);
    let roots = snap_multiple_roots(&coeffs, roots);
    let mut multiset = RootMultiset::from_roots(roots, opts.cluster_tol)?;
    let threshold = opts.cluster_tol * multiset.scale();
    for cluster in multiset.clusters.iter_mut() {
        cluster.center =
            refine_representative(&coeffs, cluster.center, cluster.multiplicity, threshold);
    }
    Ok(multiset)
}

/// Weierstrass (Durand-Kerner) sweeps until the symmetrization of the root
/// tuple matches the source coefficients.
///
/// Per-root residual acceptance leaves the multiset up to ~1e-5 away from
/// the coefficients in symmetrization distance when the fiber is a tight
/// cluster (the individual roots are ill-conditioned there even though the
/// symmetric functions are not). The Weierstrass step is Newton's method on
/// `elem_sym(r) - s = 0` as a system in the whole tuple, so it drives that
/// distance to rounding level; the best tuple seen is kept.
fn coefficient_match_polish(
    coeffs: &[Complex64],
    s: &SymPoint,
    mut roots: Vec<Complex64>,
) -> Vec<Complex64> {
    let n = roots.len();
    if n == 1 {
        return roots;
    }
    let residual = |r: &[Complex64]| -> f64 {
        match elem_sym(r) {
            Ok(back) => back.max_dist(s),
            Err(_) => f64::INFINITY,
        }
    };
    let scale = tuple_scale(&roots);
    let target = 1e-13 * s.scale();
    let mut best = roots.clone();
    let mut best_residual = residual(&roots);
    let mut stagnant = 0usize;
    // linear convergence on an m-cluster at rate (m-1)/m, so allow a few
    // hundred cheap O(n^2) sweeps
    for _ in 0..500 {
        if best_residual <= target || stagnant >= 40 {
            break;
        }
        let snapshot = roots.clone();
        for i in 0..n {
            let q = horner_compensated(coeffs, snapshot[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &other) in snapshot.iter().enumerate() {
                if j != i {
                    denom *= snapshot[i] - other;
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = q / denom;
            if step.re.is_finite() && step.im.is_finite() && step.norm() <= 0.1 * scale {
                roots[i] -= step;
            }
        }
        let now = residual(&roots);
        if now < best_residual {
            best_residual = now;
            best = roots.clone();
            stagnant = 0;
        } else {
            stagnant += 1;
        }
    }
    best
}

/// Collapses root groups that are numerically a single m-fold root.
///
/// A generic solver resolves an m-fold root only to about `eps^(1/m)`, which
/// is wider than the clustering tolerance for m >= 3. For each candidate
/// group at that intrinsic scale, the representative is refined on the
/// `(m-1)`-th derivative of `q` and accepted only if `q` and its first
/// `m-1` derivatives all vanish there to backward-error level; the group
/// members are then snapped to the refined root. Groups of genuinely
/// distinct roots fail the derivative test and are left alone.
fn snap_multiple_roots(coeffs: &[Complex64], mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n < 2 {
        return roots;
    }
    let scale = tuple_scale(&roots);
    for m in (2..=n).rev() {
        let tau = 12.0 * f64::EPSILON.powf(1.0 / m as f64) * scale;
        for group in linkage_groups(&roots, tau) {
            if group.len() != m {
                continue;
            }
            let sum: Complex64 = group.iter().map(|&i| roots[i]).sum();
            let barycenter = sum / m as f64;
            if let Some(z) = validated_multiple_root(coeffs, barycenter, m, 2.0 * tau) {
                for &i in &group {
                    roots[i] = z;
                }
            }
        }
    }
    roots
}

/// Newton-refines a candidate m-fold root on `q^(m-1)` and checks that
/// `q, q', ..., q^(m-1)` all vanish at the result to rounding level. The
/// iterate must stay within `reach` of the barycenter, so a wander into the
/// basin of a different critical point cannot relabel the group.
fn validated_multiple_root(
    coeffs: &[Complex64],
    barycenter: Complex64,
    m: usize,
    reach: f64,
) -> Option<Complex64> {
    let n = coeffs.len() - 1;
    let mut derivatives = Vec::with_capacity(m);
    derivatives.push(coeffs.to_vec());
    for _ in 1..m {
        let next = differentiate_descending(derivatives.last().unwrap());
        derivatives.push(next);
    }
    let mut z = barycenter;
    for _ in 0..8 {
        let (p, dp, _) = horner_with_bound(&derivatives[m - 1], z);
        if dp.norm() == 0.0 || !p.re.is_finite() || !p.im.is_finite() {
            return None;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    if (z - barycenter).norm() > reach {
        return None;
    }
    let slack = 256.0 * (n + 1) as f64 * f64::EPSILON;
    for deriv in &derivatives {
        let (p, _, bound) = horner_with_bound(deriv, z);
        if p.norm() > slack * bound + f64::MIN_POSITIVE {
            return None;
        }
    }
    Some(z)
}

/// Sharpens a cluster representative by Newton iteration on the
/// `(m-1)`-th derivative of `q`. A true m-fold root of `q` is a simple root
/// of that derivative, so this recovers it to machine precision, while the
/// raw cluster members are only accurate to about `eps^(1/m)`. Falls back to
/// the barycenter if the iterate leaves the cluster neighborhood.
fn refine_representative(
    coeffs: &[Complex64],
    barycenter: Complex64,
    multiplicity: usize,
    threshold: f64,
) -> Complex64 {
    let mut derived = coeffs.to_vec();
    for _ in 1..multiplicity {
        derived = differentiate_descending(&derived);
    }
    let mut z = barycenter;
    for _ in 0..8 {
        let (p, dp, _) = horner_with_bound(&derived, z);
        if dp.norm() == 0.0 {
            return barycenter;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            return barycenter;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    let guard = multiplicity as f64 * threshold + f64::EPSILON * (1.0 + barycenter.norm());
    if (z - barycenter).norm() <= guard {
        z
    } else {
        barycenter
    }
}

/// Derivative of a polynomial in descending-coefficient form.
fn differentiate_descending(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    coeffs[..degree]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (degree - i) as f64)
        .collect()
}

fn not_converged(coeffs: &[Complex64], best: &[Complex64], iterations: usize) -> Error {
    let max_residual = best
        .iter()
        .map(|&z| horner_with_bound(coeffs, z).0.norm())
        .fold(0.0, f64::max);
    Error::RootsNotConverged {
        iterations,
        max_residual,
        best: best.to_vec(),
    }
}

/// `1 + max_k |s_k|^(1/k)`: every root lies inside this circle.
fn initial_guess_radius(s: &SymPoint) -> f64 {
    let mut r: f64 = 0.0;
    for (k, c) in s.coeffs().iter().enumerate() {
        r = r.max(c.norm().powf(1.0 / (k as f64 + 1.0)));
    }
    1.0 + r
}

/// Horner evaluation of a monic polynomial (descending coefficients),
/// returning the value, the derivative and a running magnitude bound used
/// in the backward-error test.
fn horner_with_bound(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut q = coeffs[0];
    let mut dq = Complex64::new(0.0, 0.0);
    let mut bound = coeffs[0].norm();
    let az = z.norm();
    for &c in &coeffs[1..] {
        dq = dq * z + q;
        q = q * z + c;
        bound = bound * az + c.norm();
    }
    (q, dq, bound)
}

/// Error-free sum: returns the rounded sum and the exact rounding error.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Complex product with its rounding error, via FMA on the components.
fn two_prod_c(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let r1 = a.re * b.re;
    let e1 = a.re.mul_add(b.re, -r1);
    let r2 = a.im * b.im;
    let e2 = a.im.mul_add(b.im, -r2);
    let (re, e3) = two_sum(r1, -r2);
    let i1 = a.re * b.im;
    let f1 = a.re.mul_add(b.im, -i1);
    let i2 = a.im * b.re;
    let f2 = a.im.mul_add(b.re, -i2);
    let (im, f3) = two_sum(i1, i2);
    (
        Complex64::new(re, im),
        Complex64::new(e1 - e2 + e3, f1 + f2 + f3),
    )
}

/// Compensated Horner: evaluates to roughly twice the working precision by
/// carrying the rounding errors in a parallel error polynomial. Needed where
/// `q` is evaluated inside a root cluster, where the plain value is pure
/// rounding noise.
fn horner_compensated(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut q = coeffs[0];
    let mut err = Complex64::new(0.0, 0.0);
    for &c in &coeffs[1..] {
        let (p, e_prod) = two_prod_c(q, z);
        let (s_re, e_re) = two_sum(p.re, c.re);
        let (s_im, e_im) = two_sum(p.im, c.im);
        q = Complex64::new(s_re, s_im);
        err = err * z + (e_prod + Complex64::new(e_re, e_im));
    }
    q + err
}

/// Backward-error acceptance: the computed residual of a Horner evaluation
/// is at most a small multiple of eps times the running magnitude bound.
fn settled(q: Complex64, bound: f64, n: usize) -> bool {
    q.norm() <= (4 * (n + 1)) as f64 * f64::EPSILON * bound + f64::MIN_POSITIVE
}

fn residuals_ok(coeffs: &[Complex64], roots: &[Complex64]) -> bool {
    let n = coeffs.len() - 1;
    roots.iter().all(|&z| {
        let (q, _, bound) = horner_with_bound(coeffs, z);
        settled(q, 16.0 * bound, n)
    })
}

/// Simultaneous Aberth-Ehrlich iteration.
///
/// Termination: every root has either a relative step below `step_tol` or a
/// residual at the rounding floor of Horner evaluation. The step criterion
/// alone cannot be met at multiple roots in floating point, which is why the
/// residual test participates.
fn aberth(
    coeffs: &[Complex64],
    radius: f64,
    max_iterations: usize,
    step_tol: f64,
) -> std::result::Result<Vec<Complex64>, Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![-coeffs[1]]);
    }
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            // fixed angular offset so the start is not symmetric about the axes
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.7;
            radius * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    for _iter in 0..max_iterations {
        let scale = tuple_scale(&z);
        let mut all_done = true;
        let snapshot = z.clone();
        for j in 0..n {
            let (q, dq, bound) = horner_with_bound(coeffs, snapshot[j]);
            if settled(q, bound, n) {
                continue;
            }
            let newton = if dq.norm() > 0.0 {
                q / dq
            } else {
                // stationary point of q: kick deterministically off it
                let dir = Complex64::new((j as f64 + 1.0).cos(), (j as f64 + 1.0).sin());
                z[j] += 0.5 * scale * dir;
                all_done = false;
                continue;
            };
            let mut deflation = Complex64::new(0.0, 0.0);
            for k in 0..n {
                if k != j {
                    let diff = snapshot[j] - snapshot[k];
                    if diff.norm() > 0.0 {
                        deflation += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * deflation;
            let step = if denom.norm() > 0.0 { newton / denom } else { newton };
            z[j] -= step;
            if step.norm() > step_tol * scale {
                all_done = false;
            }
        }
        if all_done {
            return Ok(z);
        }
    }
    Err(z)
}

/// Eigenvalues of the companion matrix by a shifted complex Hessenberg QR
/// iteration with Givens rotations. Documented fallback for the Aberth sweep.
fn companion_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![-coeffs[1]]);
    }
    // Frobenius companion of t^n + a_{n-1} t^(n-1) + ... + a_0: subdiagonal
    // ones, last column -a_i.
    let mut h = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 1..n {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        // coefficient of t^i is coeffs[n - i]
        h[i][n - 1] = -coeffs[n - i];
    }

    let mut eigenvalues = Vec::with_capacity(n);
    let mut m = n;
    let mut stall = 0usize;
    let max_sweeps = 60 * n;
    let mut sweeps = 0usize;

    while m > 0 {
        if m == 1 {
            eigenvalues.push(h[0][0]);
            break;
        }
        // deflate negligible subdiagonals inside the active window
        for i in 1..m {
            let small = f64::EPSILON * (h[i - 1][i - 1].norm() + h[i][i].norm());
            if h[i][i - 1].norm() <= small {
                h[i][i - 1] = Complex64::new(0.0, 0.0);
            }
        }
        if h[m - 1][m - 2].norm() == 0.0 {
            eigenvalues.push(h[m - 1][m - 1]);
            m -= 1;
            stall = 0;
            continue;
        }

        sweeps += 1;
        if sweeps > max_sweeps {
            return Err(Error::RootsNotConverged {
                iterations: sweeps,
                max_residual: f64::NAN,
                best: eigenvalues,
            });
        }

        // Wilkinson shift from the trailing 2x2 block; every tenth stalled
        // sweep uses an exceptional shift to break cycles.
        stall += 1;
        let shift = if stall % 10 == 0 {
            h[m - 1][m - 2] * Complex64::new(1.5, 0.0) + h[m - 1][m - 1]
        } else {
            wilkinson_shift(
                h[m - 2][m - 2],
                h[m - 2][m - 1],
                h[m - 1][m - 2],
                h[m - 1][m - 1],
            )
        };

        // explicit shifted QR sweep on the active window
        for i in 0..m {
            h[i][i] -= shift;
        }
        let mut rotations = Vec::with_capacity(m - 1);
        for i in 0..m - 1 {
            let (c, s) = givens(h[i][i], h[i + 1][i]);
            apply_givens_left(&mut h, i, c, s, i, m);
            rotations.push((c, s));
        }
        for (i, (c, s)) in rotations.into_iter().enumerate() {
            apply_givens_right(&mut h, i, c, s, 0, (i + 2).min(m));
        }
        for i in 0..m {
            h[i][i] += shift;
        }
    }
    Ok(eigenvalues)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let mu1 = (tr + disc) / 2.0;
    let mu2 = (tr - disc) / 2.0;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Complex Givens rotation zeroing `g` in `(f, g)`: returns `(c, s)` with
/// `c` real so that `conj([c, s]) . (f, g) = r` and `[-conj(s), c] . (f, g) = 0`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let norm = (f.norm_sqr() + g.norm_sqr()).sqrt();
    if norm == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        // pure swap
        return (0.0, (g / g.norm()).conj());
    }
    let c = f.norm() / norm;
    let s = (f / f.norm()) * g.conj() / norm;
    (c, s)
}

fn apply_givens_left(
    h: &mut [Vec<Complex64>],
    i: usize,
    c: f64,
    s: Complex64,
    col_lo: usize,
    col_hi: usize,
) {
    for col in col_lo..col_hi {
        let x = h[i][col];
        let y = h[i + 1][col];
        h[i][col] = c * x + s * y;
        h[i + 1][col] = -s.conj() * x + c * y;
    }
}

fn apply_givens_right(
    h: &mut [Vec<Complex64>],
    i: usize,
    c: f64,
    s: Complex64,
    row_lo: usize,
    row_hi: usize,
) {
    for row in row_lo..row_hi {
        let x = h[row][i];
        let y = h[row][i + 1];
        h[row][i] = c * x + s.conj() * y;
        h[row][i + 1] = -s * x + c * y;
    }
}

/// A few guarded Newton steps to tighten eigenvalue output to full
/// polynomial accuracy.
fn newton_polish(coeffs: &[Complex64], mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (q, dq, bound) = horner_with_bound(coeffs, *z);
            if settled(q, bound, n) || dq.norm() == 0.0 {
                break;
            }
            let step = q / dq;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *z -= step;
        }
    }
    roots
}

/// Connected components of the "within threshold" graph (single linkage).
fn linkage_groups(points: &[Complex64], threshold: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= threshold {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if group_of_root[r] == usize::MAX {
            group_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of_root[r]].push(i);
    }
    groups
}

/// Single-linkage clustering at an absolute threshold, followed by merging
/// of any representatives that still fall within the threshold, so the
/// separation invariant holds for the output.
fn cluster_single_linkage(sorted_roots: &[Complex64], threshold: f64) -> Vec<RootCluster> {
    let mut clusters: Vec<RootCluster> = linkage_groups(sorted_roots, threshold)
        .into_iter()
        .map(|members| {
            let sum: Complex64 = members.iter().map(|&i| sorted_roots[i]).sum();
            RootCluster {
                center: sum / members.len() as f64,
                multiplicity: members.len(),
            }
        })
        .collect();
    // rare: chained clusters whose means ended up inside the threshold
    loop {
        let mut merged = false;
        'outer: for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                if (clusters[i].center - clusters[j].center).norm() <= threshold {
                    let (a, b) = (clusters[i], clusters[j]);
                    let total = (a.multiplicity + b.multiplicity) as f64;
                    let center = (a.center * a.multiplicity as f64
                        + b.center * b.multiplicity as f64)
                        / total;
                    clusters[i] = RootCluster {
                        center,
                        multiplicity: a.multiplicity + b.multiplicity,
                    };
                    clusters.remove(j);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }
    clusters.sort_by(|a, b| canonical_cmp(&a.center, &b.center));
    clusters
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |from: &[Complex64], to: &[Complex64]| {
        from.iter()
            .map(|x| {
                to.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Round trip check helper: `elem_sym(roots)` against the source point.
pub fn symmetrization_residual(s: &SymPoint, roots: &RootMultiset) -> f64 {
    match elem_sym(roots.roots()) {
        Ok(back) => back.max_dist(s),
        Err(_) => f64::INFINITY,
    }
}
