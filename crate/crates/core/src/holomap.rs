//! One-variable holomorphic function descriptors, evaluable with exact
//! closed-form derivatives up to order [`MAX_DERIV_ORDER`].
//!
//! Evaluation works on truncated Taylor expansions (jets), so compositions,
//! Blaschke quotients and fractional powers all get their derivatives from
//! series arithmetic rather than numerical differencing.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite_c, ensure_finite_slice, Error, Result};

/// Highest derivative order available in closed form.
pub const MAX_DERIV_ORDER: usize = 12;

/// A holomorphic function descriptor.
///
/// Supported shapes: identity, constant, polynomial, Blaschke product with
/// zeros in the unit disc, the power law `(1-t)^beta` on its principal
/// branch (cut along `[1, +inf)`), and compositions of the above.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HoloMapSpec", into = "HoloMapSpec")]
pub struct HoloMap {
    kind: Kind,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Identity,
    Constant(Complex64),
    /// Ascending coefficients `a0 + a1 t + ...`.
    Polynomial(Vec<Complex64>),
    /// `unimodular * prod_j (t - a_j) / (1 - conj(a_j) t)`.
    Blaschke {
        zeros: Vec<Complex64>,
        unimodular: Complex64,
    },
    /// `(1 - t)^beta`, principal branch.
    PowerLaw { beta: f64 },
    Compose {
        outer: Box<HoloMap>,
        inner: Box<HoloMap>,
    },
}

/// JSON form of a [`HoloMap`], also used by the command line interface.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HoloMapSpec {
    Identity,
    Constant {
        value: Complex64,
    },
    Polynomial {
        coeffs: Vec<Complex64>,
    },
    Blaschke {
        zeros: Vec<Complex64>,
        unimodular: Complex64,
    },
    PowerLaw {
        beta: f64,
    },
    Compose {
        outer: Box<HoloMapSpec>,
        inner: Box<HoloMapSpec>,
    },
}

impl TryFrom<HoloMapSpec> for HoloMap {
    type Error = Error;
    fn try_from(spec: HoloMapSpec) -> Result<Self> {
        match spec {
            HoloMapSpec::Identity => Ok(HoloMap::identity()),
            HoloMapSpec::Constant { value } => Ok(HoloMap::constant(value)),
            HoloMapSpec::Polynomial { coeffs } => HoloMap::polynomial(coeffs),
            HoloMapSpec::Blaschke { zeros, unimodular } => HoloMap::blaschke(zeros, unimodular),
            HoloMapSpec::PowerLaw { beta } => HoloMap::power_law(beta),
            HoloMapSpec::Compose { outer, inner } => Ok(HoloMap::compose(
                HoloMap::try_from(*outer)?,
                HoloMap::try_from(*inner)?,
            )),
        }
    }
}

impl From<HoloMap> for HoloMapSpec {
    fn from(map: HoloMap) -> Self {
        match map.kind {
            Kind::Identity => HoloMapSpec::Identity,
            Kind::Constant(value) => HoloMapSpec::Constant { value },
            Kind::Polynomial(coeffs) => HoloMapSpec::Polynomial { coeffs },
            Kind::Blaschke { zeros, unimodular } => HoloMapSpec::Blaschke { zeros, unimodular },
            Kind::PowerLaw { beta } => HoloMapSpec::PowerLaw { beta },
            Kind::Compose { outer, inner } => HoloMapSpec::Compose {
                outer: Box::new((*outer).into()),
                inner: Box::new((*inner).into()),
            },
        }
    }
}

impl HoloMap {
    pub fn identity() -> Self {
        HoloMap { kind: Kind::Identity }
    }

    pub fn constant(value: Complex64) -> Self {
        HoloMap {
            kind: Kind::Constant(value),
        }
    }

    /// Polynomial with ascending coefficients `a0 + a1 t + ...`.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("polynomial needs at least one coefficient".into()));
        }
        ensure_finite_slice(&coeffs, "polynomial coefficients")?;
        Ok(HoloMap {
            kind: Kind::Polynomial(coeffs),
        })
    }

    /// The monomial `t^m`.
    pub fn monomial(m: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m + 1];
        coeffs[m] = Complex64::new(1.0, 0.0);
        HoloMap {
            kind: Kind::Polynomial(coeffs),
        }
    }

    /// Blaschke product of the unit disc. Zeros must lie strictly inside the
    /// disc; the scalar factor must be unimodular.
    pub fn blaschke(zeros: Vec<Complex64>, unimodular: Complex64) -> Result<Self> {
        ensure_finite_slice(&zeros, "blaschke zeros")?;
        ensure_finite_c(unimodular, "blaschke unimodular factor")?;
        for &a in &zeros {
            if a.norm() >= 1.0 {
                return Err(Error::InvalidInput(format!(
                    "blaschke zero {a} is not strictly inside the unit disc"
                )));
            }
        }
        if (unimodular.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "blaschke scalar factor {unimodular} is not unimodular"
            )));
        }
        Ok(HoloMap {
            kind: Kind::Blaschke { zeros, unimodular },
        })
    }

    /// `(1 - t)^beta` on the principal branch, cut along `[1, +inf)`.
    pub fn power_law(beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::NonFiniteInput {
                context: "power law exponent",
            });
        }
        Ok(HoloMap {
            kind: Kind::PowerLaw { beta },
        })
    }

    /// `outer` after `inner`.
    pub fn compose(outer: HoloMap, inner: HoloMap) -> Self {
        HoloMap {
            kind: Kind::Compose {
                outer: Box::new(outer),
                inner: Box::new(inner),
            },
        }
    }

    /// Value at `t`.
    pub fn eval(&self, t: Complex64) -> Result<Complex64> {
        Ok(self.eval_jet(&Jet::variable(t, 0))?.coeffs[0])
    }

    /// Derivatives `0..=order` at `t`, from the series expansion.
    pub fn eval_derivs(&self, t: Complex64, order: usize) -> Result<Vec<Complex64>> {
        let taylor = self.taylor(t, order)?;
        let mut factorial = 1.0;
        Ok(taylor
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 1 {
                    factorial *= k as f64;
                }
                c * factorial
            })
            .collect())
    }

    /// Taylor coefficients `0..=order` at `t`.
    pub fn taylor(&self, t: Complex64, order: usize) -> Result<Vec<Complex64>> {
        if order > MAX_DERIV_ORDER {
            return Err(Error::UnsupportedOrder {
                order,
                max: MAX_DERIV_ORDER,
            });
        }
        Ok(self.eval_jet(&Jet::variable(t, order))?.coeffs)
    }

    /// Whether the map is analytic at `t` (away from Blaschke poles and the
    /// power-law branch cut).
    pub fn analytic_at(&self, t: Complex64) -> bool {
        match &self.kind {
            Kind::Identity | Kind::Constant(_) | Kind::Polynomial(_) => true,
            Kind::Blaschke { zeros, .. } => zeros
                .iter()
                .all(|a| (Complex64::new(1.0, 0.0) - a.conj() * t).norm() > 1e-12),
            Kind::PowerLaw { .. } => {
                let h = Complex64::new(1.0, 0.0) - t;
                !(h.im == 0.0 && h.re <= 0.0)
            }
            Kind::Compose { outer, inner } => {
                inner.analytic_at(t)
                    && match inner.eval(t) {
                        Ok(v) => outer.analytic_at(v),
                        Err(_) => false,
                    }
            }
        }
    }

    /// Closed-form derivative, available for the polynomial-like shapes.
    pub fn differentiate(&self) -> Option<HoloMap> {
        match &self.kind {
            Kind::Identity => Some(HoloMap::constant(Complex64::new(1.0, 0.0))),
            Kind::Constant(_) => Some(HoloMap::constant(Complex64::new(0.0, 0.0))),
            Kind::Polynomial(coeffs) => {
                if coeffs.len() == 1 {
                    return Some(HoloMap::constant(Complex64::new(0.0, 0.0)));
                }
                let d = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, &c)| c * k as f64)
                    .collect();
                Some(HoloMap {
                    kind: Kind::Polynomial(d),
                })
            }
            _ => None,
        }
    }

    fn eval_jet(&self, x: &Jet) -> Result<Jet> {
        match &self.kind {
            Kind::Identity => Ok(x.clone()),
            Kind::Constant(c) => Ok(Jet::constant(*c, x.order())),
            Kind::Polynomial(coeffs) => {
                let mut acc = Jet::constant(*coeffs.last().unwrap(), x.order());
                for &c in coeffs.iter().rev().skip(1) {
                    acc = acc.mul(x);
                    acc.coeffs[0] += c;
                }
                Ok(acc)
            }
            Kind::Blaschke { zeros, unimodular } => {
                let mut acc = Jet::constant(*unimodular, x.order());
                let one = Complex64::new(1.0, 0.0);
                for &a in zeros {
                    let mut num = x.clone();
                    num.coeffs[0] -= a;
                    let mut den = x.scaled(-a.conj());
                    den.coeffs[0] += one;
                    if den.coeffs[0].norm() < 1e-14 {
                        return Err(Error::NotAnalytic {
                            point: x.coeffs[0],
                            what: format!("blaschke pole of zero {a}"),
                        });
                    }
                    acc = acc.mul(&num).div(&den);
                }
                Ok(acc)
            }
            Kind::PowerLaw { beta } => {
                let mut h = x.scaled(Complex64::new(-1.0, 0.0));
                h.coeffs[0] += Complex64::new(1.0, 0.0);
                let h0 = h.coeffs[0];
                if h0.norm() == 0.0 || (h0.im == 0.0 && h0.re < 0.0) {
                    return Err(Error::NotAnalytic {
                        point: x.coeffs[0],
                        what: "power-law branch cut along [1, +inf)".into(),
                    });
                }
                // h^beta = h0^beta * (1 + u)^beta with u = h/h0 - 1
                let mut u = h.scaled(h0.inv());
                u.coeffs[0] = Complex64::new(0.0, 0.0);
                let lead = h0.powf(*beta);
                let mut acc = Jet::constant(Complex64::new(1.0, 0.0), x.order());
                let mut u_pow = Jet::constant(Complex64::new(1.0, 0.0), x.order());
                let mut binom = Complex64::new(1.0, 0.0);
                for k in 1..=x.order() {
                    u_pow = u_pow.mul(&u);
                    binom *= (beta - (k as f64 - 1.0)) / k as f64;
                    acc = acc.add(&u_pow.scaled(binom));
                }
                Ok(acc.scaled(lead))
            }
            Kind::Compose { outer, inner } => {
                let mid = inner.eval_jet(x)?;
                outer.eval_jet(&mid)
            }
        }
    }
}

/// Truncated Taylor expansion around a base point; `coeffs[k]` multiplies
/// the k-th power of the offset.
#[derive(Debug, Clone)]
struct Jet {
    coeffs: Vec<Complex64>,
}

impl Jet {
    fn constant(value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = value;
        Jet { coeffs }
    }

    /// The identity function expanded at `t0`.
    fn variable(t0: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = t0;
        if order >= 1 {
            coeffs[1] = Complex64::new(1.0, 0.0);
        }
        Jet { coeffs }
    }

    fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn add(&self, other: &Jet) -> Jet {
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn scaled(&self, factor: Complex64) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn mul(&self, other: &Jet) -> Jet {
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for k in 0..n - i {
                out[i + k] += self.coeffs[i] * other.coeffs[k];
            }
        }
        Jet { coeffs: out }
    }

    /// Series division; the divisor must have a nonzero constant term.
    fn div(&self, other: &Jet) -> Jet {
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let lead = other.coeffs[0];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for i in 0..k {
                acc -= out[i] * other.coeffs[k - i];
            }
            out[k] = acc / lead;
        }
        Jet { coeffs: out }
    }
}
