//! Property tests for the symmetric product geometry: the two-variable
//! closed form against root-based membership, the defining function against
//! classification, its sub-mean-value property on complex lines, and the
//! product embedding against the concatenation oracle.

mod common;

use common::{complex_in_box, complex_in_disc, rng, tuple_in_disc};
use num_complex::Complex64;
use rand::Rng;
use symprod_core::{
    bidisc_value, elem_sym, f_defining, product_embed, product_embed_jacobian_det,
    symprod_contains, DomainSpec, Membership, SymPoint,
};

#[test]
fn bidisc_closed_form_matches_root_membership() {
    let mut rng = rng(31);
    let d = DomainSpec::unit_disc();
    let mut checked = 0usize;
    for _ in 0..10_000 {
        let s = SymPoint::new(vec![
            complex_in_box(&mut rng, 3.0),
            complex_in_box(&mut rng, 3.0),
        ])
        .unwrap();
        let v = bidisc_value(&s).unwrap();
        if (v - 1.0).abs() <= 1e-9 {
            continue; // margin band excluded
        }
        checked += 1;
        let by_roots = symprod_contains(&d, &s, 0.0).unwrap().classification;
        let by_form = if v < 1.0 {
            Membership::Inside
        } else {
            Membership::Outside
        };
        assert_eq!(by_roots, by_form, "disagreement at s = {:?}, value {v}", s.coeffs());
    }
    assert!(checked > 9000);
}

#[test]
fn defining_function_sign_matches_classification() {
    let mut rng = rng(32);
    let d = DomainSpec::unit_disc();
    let mut checked = 0usize;
    for _ in 0..10_000 {
        let n = rng.random_range(1..=5);
        // mix of interior and exterior fibers
        let z = tuple_in_disc(&mut rng, n, 1.4);
        let s = elem_sym(&z).unwrap();
        let f = f_defining(&d, &s).unwrap();
        if f.abs() <= 1e-9 {
            continue;
        }
        checked += 1;
        let class = symprod_contains(&d, &s, 0.0).unwrap().classification;
        if f < 0.0 {
            assert_eq!(class, Membership::Inside, "f = {f}");
        } else {
            assert_eq!(class, Membership::Outside, "f = {f}");
        }
    }
    assert!(checked > 9000);
}

#[test]
fn defining_function_sub_mean_value_on_complex_lines() {
    let mut rng = rng(33);
    let d = DomainSpec::unit_disc();
    let rho = 0.005;
    let mut accepted = 0usize;
    while accepted < 1000 {
        let n = rng.random_range(2..=4);
        let z = tuple_in_disc(&mut rng, n, 0.92);
        let s = elem_sym(&z).unwrap();
        let f0 = f_defining(&d, &s).unwrap();
        if f0 >= -0.05 {
            continue;
        }
        accepted += 1;
        let mut direction: Vec<Complex64> = (0..n)
            .map(|_| complex_in_disc(&mut rng, 1.0))
            .collect();
        let norm: f64 = direction.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for v in direction.iter_mut() {
            *v /= norm.max(1e-12);
        }
        let mut mean = 0.0;
        for k in 0..32 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 32.0;
            let lambda = Complex64::from_polar(rho, theta);
            let moved = SymPoint::new(
                s.coeffs()
                    .iter()
                    .zip(direction.iter())
                    .map(|(c, v)| c + lambda * v)
                    .collect(),
            )
            .unwrap();
            mean += f_defining(&d, &moved).unwrap();
        }
        mean /= 32.0;
        assert!(
            f0 <= mean + 1e-8,
            "sub-mean-value violated: f = {f0}, circle mean = {mean}"
        );
    }
}

#[test]
fn product_embed_against_concatenation_oracle() {
    let mut rng = rng(34);
    for _ in 0..10_000 {
        let n = rng.random_range(3..=8);
        let za = tuple_in_disc(&mut rng, 2, 1.5);
        let zb = tuple_in_disc(&mut rng, n - 2, 1.5);
        let s2 = elem_sym(&za).unwrap();
        let sigma = elem_sym(&zb).unwrap();
        let embedded = product_embed(&s2, &sigma).unwrap();
        let all: Vec<Complex64> = za.iter().chain(zb.iter()).copied().collect();
        let oracle = elem_sym(&all).unwrap();
        let scale = symprod_core::tuple_scale(&all);
        assert!(
            embedded.max_dist(&oracle) <= 1e-12 * scale.powi(n as i32),
            "embedding mismatch at n = {n}"
        );
    }
}

#[test]
fn product_embed_jacobian_matches_finite_differences() {
    let mut rng = rng(35);
    let h = 1e-5;
    for _ in 0..60 {
        let n = rng.random_range(3..=5);
        let s2 = SymPoint::new(vec![
            complex_in_box(&mut rng, 1.0),
            complex_in_box(&mut rng, 1.0),
        ])
        .unwrap();
        let sigma = SymPoint::new((0..n - 2).map(|_| complex_in_box(&mut rng, 1.0)).collect())
            .unwrap();
        let analytic = product_embed_jacobian_det(&s2, &sigma).unwrap();

        // central differences of the full map, column by column
        let pack = |s2: &SymPoint, sigma: &SymPoint| -> Vec<Complex64> {
            let mut v = s2.coeffs().to_vec();
            v.extend_from_slice(sigma.coeffs());
            v
        };
        let vars = pack(&s2, &sigma);
        let eval = |vars: &[Complex64]| -> Vec<Complex64> {
            let s2 = SymPoint::new(vars[..2].to_vec()).unwrap();
            let sigma = SymPoint::new(vars[2..].to_vec()).unwrap();
            product_embed(&s2, &sigma).unwrap().coeffs().to_vec()
        };
        let mut jacobian = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for col in 0..n {
            let mut plus = vars.clone();
            let mut minus = vars.clone();
            plus[col] += Complex64::new(h, 0.0);
            minus[col] -= Complex64::new(h, 0.0);
            let fp = eval(&plus);
            let fm = eval(&minus);
            for row in 0..n {
                jacobian[row][col] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        let fd = determinant(jacobian);
        let denom = analytic.norm().max(1.0);
        assert!(
            (analytic - fd).norm() / denom <= 1e-6,
            "det mismatch: analytic {analytic}, finite differences {fd}"
        );
    }
}

fn determinant(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
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
