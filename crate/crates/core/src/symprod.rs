//! Geometry of the n-fold symmetric product of a planar domain: membership,
//! the diagonal embedding, the plurisubharmonic defining function, the
//! two-variable closed form for the symmetrized bidisc, and the product
//! embedding with its Jacobian.

use num_complex::Complex64;

use crate::domain::{DomainSpec, Membership};
use crate::error::{Error, Result};
use crate::roots::{roots_of, PartitionType, RootMultiset};
use crate::sympoly::{elem_sym, SymPoint};

/// A classified point of a symmetric product.
#[derive(Debug, Clone)]
pub struct SymProductPoint {
    pub s: SymPoint,
    pub domain: DomainSpec,
    pub classification: Membership,
    pub stratum: PartitionType,
    /// The fiber of the symmetrization map over `s`.
    pub roots: RootMultiset,
}

/// Classifies `s` against the symmetric product of `d` by locating the
/// roots of `q(s;t)`: inside iff every root is inside (margin-adjusted),
/// outside iff some root is clearly outside.
pub fn symprod_contains(d: &DomainSpec, s: &SymPoint, margin: f64) -> Result<SymProductPoint> {
    let roots = roots_of(s)?;
    let mut any_outside = false;
    let mut all_inside = true;
    // classify the cluster representatives: they carry the refined accuracy
    // at multiple roots
    for cluster in roots.clusters() {
        let z = cluster.center;
        // a root at a hole center is outside the domain even though the
        // defining function has a pole there
        let membership = match d.psi(z) {
            Ok(psi) => {
                if psi > margin {
                    Membership::Outside
                } else if psi < -margin {
                    Membership::Inside
                } else {
                    Membership::BoundaryBand
                }
            }
            Err(Error::PoleAtHoleCenter { .. }) => Membership::Outside,
            Err(e) => return Err(e),
        };
        match membership {
            Membership::Outside => any_outside = true,
            Membership::BoundaryBand => all_inside = false,
            Membership::Inside => {}
        }
    }
    let classification = if any_outside {
        Membership::Outside
    } else if all_inside {
        Membership::Inside
    } else {
        Membership::BoundaryBand
    };
    Ok(SymProductPoint {
        s: s.clone(),
        domain: d.clone(),
        classification,
        stratum: roots.partition_type(),
        roots,
    })
}

/// Image of `w` under the diagonal embedding:
/// `(C(n,1) w, C(n,2) w^2, ..., w^n)`, the symmetrization of `(w, ..., w)`.
pub fn diagonal_embed(w: Complex64, n: usize) -> Result<SymPoint> {
    if n == 0 {
        return Err(Error::InvalidInput("diagonal_embed needs n >= 1".into()));
    }
    let mut coeffs = Vec::with_capacity(n);
    let mut binom = 1.0;
    let mut power = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        binom = binom * (n - k + 1) as f64 / k as f64;
        power *= w;
        coeffs.push(binom * power);
    }
    SymPoint::new(coeffs)
}

/// The defining function of the symmetric product: the maximum of the
/// domain's defining function over the fiber. Negative exactly on the
/// symmetric product, up to root-solver tolerance.
pub fn f_defining(d: &DomainSpec, s: &SymPoint) -> Result<f64> {
    let roots = roots_of(s)?;
    let mut value = f64::NEG_INFINITY;
    for cluster in roots.clusters() {
        value = value.max(d.psi(cluster.center)?);
    }
    Ok(value)
}

/// The sublevel predicate `f(s) < 1/nu` carving out the pseudoconvex
/// neighborhood basis of the closed symmetric product.
pub fn in_omega_nu(d: &DomainSpec, s: &SymPoint, nu: u32) -> Result<bool> {
    if nu == 0 {
        return Err(Error::InvalidInput("omega_nu needs nu >= 1".into()));
    }
    Ok(f_defining(d, s)? < 1.0 / nu as f64)
}

fn sigma_at(sigma: &SymPoint, j: i64) -> Complex64 {
    // convention: sigma_0 = 1, sigma_(-1) = sigma_(n-1) = sigma_n = 0
    if j == 0 {
        Complex64::new(1.0, 0.0)
    } else if j >= 1 && (j as usize) <= sigma.n() {
        sigma.coeffs()[j as usize - 1]
    } else {
        Complex64::new(0.0, 0.0)
    }
}

fn check_product_embed_args(s2: &SymPoint, sigma: &SymPoint) -> Result<usize> {
    if s2.n() != 2 {
        return Err(Error::InvalidInput(format!(
            "product_embed needs a 2-dimensional first factor, got {}",
            s2.n()
        )));
    }
    let n = sigma.n() + 2;
    if n < 3 {
        return Err(Error::InvalidInput(
            "product_embed needs n >= 3 (second factor of dimension >= 1)".into(),
        ));
    }
    Ok(n)
}

/// The embedding of a 2-fold times (n-2)-fold product of symmetric products
/// into the n-fold one:
/// `Phi_k = s2 sigma_(k-2) + s1 sigma_(k-1) + sigma_k`.
/// Equals the symmetrization of the concatenated root tuples.
pub fn product_embed(s2: &SymPoint, sigma: &SymPoint) -> Result<SymPoint> {
    let n = check_product_embed_args(s2, sigma)?;
    let s1c = s2.coeffs()[0];
    let s2c = s2.coeffs()[1];
    let coeffs = (1..=n as i64)
        .map(|k| s2c * sigma_at(sigma, k - 2) + s1c * sigma_at(sigma, k - 1) + sigma_at(sigma, k))
        .collect();
    SymPoint::new(coeffs)
}

/// Determinant of the Jacobian of [`product_embed`], columns ordered as
/// `(d/ds1, d/ds2, d/dsigma_1, ..., d/dsigma_(n-2))`.
pub fn product_embed_jacobian_det(s2: &SymPoint, sigma: &SymPoint) -> Result<Complex64> {
    let n = check_product_embed_args(s2, sigma)?;
    let s1c = s2.coeffs()[0];
    let s2c = s2.coeffs()[1];
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 1..=n {
        matrix[k - 1][0] = sigma_at(sigma, k as i64 - 1);
        matrix[k - 1][1] = sigma_at(sigma, k as i64 - 2);
        for j in 1..=n - 2 {
            let mut entry = Complex64::new(0.0, 0.0);
            if j as i64 == k as i64 - 2 {
                entry += s2c;
            }
            if j as i64 == k as i64 - 1 {
                entry += s1c;
            }
            if j == k {
                entry += Complex64::new(1.0, 0.0);
            }
            matrix[k - 1][j + 1] = entry;
        }
    }
    Ok(determinant(matrix))
}

/// Determinant by LU with partial pivoting.
fn determinant(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .unwrap();
        if m[pivot_row][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                let sub = factor * m[col][k];
                m[row][k] -= sub;
            }
        }
    }
    det
}

/// Membership value for the symmetrized bidisc:
/// `|s1 - conj(s1) s2| + |s2|^2`, less than 1 exactly on the domain.
pub fn bidisc_value(s: &SymPoint) -> Result<f64> {
    if s.n() != 2 {
        return Err(Error::InvalidInput(format!(
            "bidisc closed form needs n = 2, got {}",
            s.n()
        )));
    }
    let s1 = s.coeffs()[0];
    let s2 = s.coeffs()[1];
    Ok((s1 - s1.conj() * s2).norm() + s2.norm_sqr())
}

/// Closed-form membership test for the symmetrized bidisc; the independent
/// two-variable oracle for the root-based test.
pub fn bidisc_contains(s: &SymPoint, margin: f64) -> Result<Membership> {
    let v = bidisc_value(s)?;
    Ok(if v < 1.0 - margin {
        Membership::Inside
    } else if v > 1.0 + margin {
        Membership::Outside
    } else {
        Membership::BoundaryBand
    })
}

/// Upper bound for the distance from `s` to the closed symmetric product of
/// `d`, obtained by radially projecting each root into the closed domain and
/// re-symmetrizing. A bound, not a distance.
pub fn sym_product_distance_bound(d: &DomainSpec, s: &SymPoint) -> Result<f64> {
    let roots = roots_of(s)?;
    let outer = d.outer();
    let projected: Vec<Complex64> = roots
        .roots()
        .iter()
        .map(|&z| {
            let offset = z - outer.center;
            if offset.norm() > outer.radius {
                return outer.center + offset * (outer.radius / offset.norm());
            }
            for h in d.holes() {
                let from_hole = z - h.center;
                let dist = from_hole.norm();
                if dist < h.radius {
                    return if dist == 0.0 {
                        h.center + Complex64::new(h.radius, 0.0)
                    } else {
                        h.center + from_hole * (h.radius / dist)
                    };
                }
            }
            z
        })
        .collect();
    let s_projected = elem_sym(&projected)?;
    let dist_sq: f64 = s_projected
        .coeffs()
        .iter()
        .zip(s.coeffs().iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum();
    Ok(dist_sq.sqrt())
}
