//! Symmetric-polynomial algebra.
//!
//! Coordinates on the symmetric product are the elementary symmetric
//! functions of the root tuple; the alternative coordinates are the power
//! sums. This module evaluates both, converts between them with the Newton
//! recurrences, and evaluates the monic polynomial
//! `q(s;t) = t^n - s1 t^(n-1) + ... + (-1)^n sn` together with its
//! derivatives in `t` and in each coefficient.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ensure_finite_slice, Error, Result};

/// A point of a symmetric product: the coefficient tuple `(s1, ..., sn)`
/// of the monic polynomial `q(s;t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SymPoint {
    coeffs: Vec<Complex64>,
}

impl SymPoint {
    /// Builds a point from its coefficient tuple. Requires `n >= 1` and
    /// finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("SymPoint needs n >= 1 coefficients".into()));
        }
        ensure_finite_slice(&coeffs, "SymPoint coefficients")?;
        Ok(SymPoint { coeffs })
    }

    /// Convenience constructor from real/imaginary pairs.
    pub fn from_re_im(pairs: &[(f64, f64)]) -> Result<Self> {
        SymPoint::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `1 + max |s_k|`, the scale used by all relative tolerances.
    pub fn scale(&self) -> f64 {
        tuple_scale(&self.coeffs)
    }

    /// Max-norm distance to another point of the same dimension.
    pub fn max_dist(&self, other: &SymPoint) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The power-sum coordinates `(tau_1, ..., tau_n)` of a root tuple.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PowerSumPoint {
    sums: Vec<Complex64>,
}

impl PowerSumPoint {
    pub fn new(sums: Vec<Complex64>) -> Result<Self> {
        if sums.is_empty() {
            return Err(Error::InvalidInput("PowerSumPoint needs n >= 1 entries".into()));
        }
        ensure_finite_slice(&sums, "PowerSumPoint entries")?;
        Ok(PowerSumPoint { sums })
    }

    pub fn n(&self) -> usize {
        self.sums.len()
    }

    pub fn sums(&self) -> &[Complex64] {
        &self.sums
    }
}

/// `1 + max |z_k|` over a tuple.
pub fn tuple_scale(zs: &[Complex64]) -> f64 {
    1.0 + zs.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Total order on complex numbers used to fix a canonical summation order:
/// lexicographic on (re, im).
pub(crate) fn canonical_cmp(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn sorted_canonically(zs: &[Complex64]) -> Vec<Complex64> {
    let mut v = zs.to_vec();
    v.sort_by(canonical_cmp);
    v
}

/// Elementary symmetric functions of a root tuple.
///
/// The tuple is sorted into a canonical order before the coefficients are
/// accumulated, so permutations of the input give bit-identical output.
pub fn elem_sym(roots: &[Complex64]) -> Result<SymPoint> {
    if roots.is_empty() {
        return Err(Error::InvalidInput("elem_sym needs n >= 1 roots".into()));
    }
    ensure_finite_slice(roots, "elem_sym roots")?;
    let ordered = sorted_canonically(roots);
    // Expand prod (t - z_j) one factor at a time; c[k] is the coefficient of
    // t^(deg-k), so c = [1, -pi_1, +pi_2, ...] at the end.
    let n = ordered.len();
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[0] = Complex64::new(1.0, 0.0);
    for (j, &z) in ordered.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            c[k] = c[k] - z * c[k - 1];
        }
    }
    let coeffs = (1..=n)
        .map(|k| if k % 2 == 1 { -c[k] } else { c[k] })
        .collect();
    SymPoint::new(coeffs)
}

/// Power sums `tau_j = sum_l z_l^j` for `j = 1..=n`.
///
/// Same canonical ordering as [`elem_sym`], with compensated accumulation,
/// so the output is permutation-invariant bit for bit.
pub fn power_sums(roots: &[Complex64]) -> Result<PowerSumPoint> {
    if roots.is_empty() {
        return Err(Error::InvalidInput("power_sums needs n >= 1 roots".into()));
    }
    ensure_finite_slice(roots, "power_sums roots")?;
    let ordered = sorted_canonically(roots);
    let n = ordered.len();
    let mut powers: Vec<Complex64> = ordered.clone();
    let mut sums = Vec::with_capacity(n);
    for j in 0..n {
        if j > 0 {
            for (p, &z) in powers.iter_mut().zip(ordered.iter()) {
                *p *= z;
            }
        }
        sums.push(kahan_sum(&powers));
    }
    PowerSumPoint::new(sums)
}

fn kahan_sum(terms: &[Complex64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    let mut c = Complex64::new(0.0, 0.0);
    for &x in terms {
        let y = x - c;
        let t = s + y;
        c = (t - s) - y;
        s = t;
    }
    s
}

/// The transform `P`: power sums to elementary symmetric functions.
///
/// Solves the Newton recurrence
/// `tau_k - pi_1 tau_(k-1) + ... + (-1)^(k-1) pi_(k-1) tau_1 + (-1)^k k pi_k = 0`
/// for `pi_k`, dividing by `k` at each step.
pub fn newton_p(tau: &PowerSumPoint) -> Result<SymPoint> {
    let p = tau.sums();
    let n = p.len();
    let mut e: Vec<Complex64> = Vec::with_capacity(n);
    for k in 1..=n {
        // k*e_k = sum_{i=1}^{k} (-1)^(i-1) e_(k-i) p_i, with e_0 = 1.
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            let prev = if k - i == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                e[k - i - 1]
            };
            let term = prev * p[i - 1];
            acc += if i % 2 == 1 { term } else { -term };
        }
        e.push(acc / k as f64);
    }
    SymPoint::new(e)
}

/// The transform `Q`: elementary symmetric functions to power sums.
///
/// Forward solve of the same Newton recurrence for `tau_k`.
pub fn newton_q(s: &SymPoint) -> Result<PowerSumPoint> {
    let e = s.coeffs();
    let n = e.len();
    let mut p: Vec<Complex64> = Vec::with_capacity(n);
    for k in 1..=n {
        // p_k = sum_{i=1}^{k-1} (-1)^(i-1) e_i p_(k-i) + (-1)^(k-1) k e_k
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..k {
            let term = e[i - 1] * p[k - i - 1];
            acc += if i % 2 == 1 { term } else { -term };
        }
        let last = e[k - 1] * k as f64;
        acc += if k % 2 == 1 { last } else { -last };
        p.push(acc);
    }
    PowerSumPoint::new(p)
}

/// Value of `q(s;t)` together with its `t`-derivative and the gradient in
/// the coefficients.
#[derive(Debug, Clone)]
pub struct QValue {
    /// `q(s;t)`
    pub q: Complex64,
    /// `dq/dt`
    pub q_t: Complex64,
    /// `dq/ds_j = (-1)^j t^(n-j)` for `j = 1..=n`
    pub q_s: Vec<Complex64>,
}

/// Evaluates `q(s;t) = t^n - s1 t^(n-1) + ... + (-1)^n sn` by a Horner
/// recurrence that carries the `t`-derivative along.
pub fn eval_q(s: &SymPoint, t: Complex64) -> QValue {
    let n = s.n();
    let mut q = Complex64::new(1.0, 0.0);
    let mut q_t = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let c = signed_coeff(s, k);
        q_t = q_t * t + q;
        q = q * t + c;
    }
    let mut powers = vec![Complex64::new(1.0, 0.0); n];
    for k in 1..n {
        powers[k] = powers[k - 1] * t;
    }
    let q_s = (1..=n)
        .map(|j| {
            let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
            sign * powers[n - j]
        })
        .collect();
    QValue { q, q_t, q_s }
}

/// `(q, dq/dt)` without the coefficient gradient; the allocation-free form
/// used inside quadrature loops.
pub fn eval_q_and_dq(s: &SymPoint, t: Complex64) -> (Complex64, Complex64) {
    let mut q = Complex64::new(1.0, 0.0);
    let mut q_t = Complex64::new(0.0, 0.0);
    for k in 1..=s.n() {
        let c = signed_coeff(s, k);
        q_t = q_t * t + q;
        q = q * t + c;
    }
    (q, q_t)
}

/// Coefficient of `t^(n-k)` in `q(s;t)`, i.e. `(-1)^k s_k`.
pub(crate) fn signed_coeff(s: &SymPoint, k: usize) -> Complex64 {
    let v = s.coeffs()[k - 1];
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Monic coefficients of `q(s;t)` in descending powers: `[1, -s1, s2, ...]`.
pub fn monic_coeffs(s: &SymPoint) -> Vec<Complex64> {
    let mut c = Vec::with_capacity(s.n() + 1);
    c.push(Complex64::new(1.0, 0.0));
    for k in 1..=s.n() {
        c.push(signed_coeff(s, k));
    }
    c
}
