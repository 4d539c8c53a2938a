//! Property tests for induced maps and the boundary operators: route
//! agreement, functoriality, the coefficient-derivative identity, the
//! contour-integral inverse, diagonal Cauchy identities, and a finiteness
//! smoke test for the Cauchy-type operator near the diagonal.

mod common;

use common::{complex_in_disc, rng, tuple_in_disc};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use symprod_core::{
    diagonal_embed, elem_sym, g_op, gamma_inverse, j_op, sigma_phi_direct, sigma_phi_integral,
    DomainSpec, GammaDisc, HoloMap, SymPoint,
};

fn random_poly_map(rng: &mut ChaCha8Rng, max_degree: usize, coeff_box: f64) -> HoloMap {
    let degree = rng.random_range(0..=max_degree);
    HoloMap::polynomial(
        (0..=degree)
            .map(|_| {
                Complex64::new(
                    rng.random_range(-coeff_box..coeff_box),
                    rng.random_range(-coeff_box..coeff_box),
                )
            })
            .collect(),
    )
    .unwrap()
}

fn random_blaschke(rng: &mut ChaCha8Rng, max_degree: usize) -> HoloMap {
    let degree = rng.random_range(1..=max_degree);
    let zeros = (0..degree).map(|_| complex_in_disc(rng, 0.7)).collect();
    let phase = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
    HoloMap::blaschke(zeros, Complex64::from_polar(1.0, phase)).unwrap()
}

#[test]
fn routes_agree_for_polynomials_and_blaschke() {
    let mut rng = rng(41);
    let d = DomainSpec::unit_disc();
    for trial in 0..150 {
        let n = rng.random_range(2..=5);
        let z = tuple_in_disc(&mut rng, n, 0.88);
        let s = elem_sym(&z).unwrap();
        let phi = if trial % 2 == 0 {
            random_poly_map(&mut rng, 4, 1.0)
        } else {
            random_blaschke(&mut rng, 3)
        };
        let direct = sigma_phi_direct(&phi, &s).unwrap();
        let integral = sigma_phi_integral(&phi, &s, &d, 1024).unwrap();
        let scale = direct.value.scale();
        let dist = direct.value.max_dist(&integral.value);
        assert!(
            dist <= 1e-6 * scale,
            "route disagreement {dist:.3e} at n = {n} (trial {trial})"
        );
    }
}

#[test]
fn functoriality_of_composition() {
    // the induced map of a composition is the composition of induced maps
    let mut rng = rng(42);
    for _ in 0..200 {
        let n = rng.random_range(2..=5);
        let z = tuple_in_disc(&mut rng, n, 0.9);
        let s = elem_sym(&z).unwrap();
        // inner map contracts into the disc so the outer map stays composable
        let inner = random_poly_map(&mut rng, 3, 0.3);
        let outer = random_poly_map(&mut rng, 3, 1.0);
        let composed = HoloMap::compose(outer.clone(), inner.clone());

        let one_step = sigma_phi_direct(&composed, &s).unwrap().value;
        let mid = sigma_phi_direct(&inner, &s).unwrap().value;
        let two_step = sigma_phi_direct(&outer, &mid).unwrap().value;
        assert!(
            one_step.max_dist(&two_step) <= 1e-8 * one_step.scale(),
            "functoriality violated at n = {n}"
        );
    }
}

#[test]
fn coefficient_derivative_identity() {
    // d/ds_j of the normalized boundary integral of g q'/q equals
    // (-1)^(j+1) (1/(2 pi i)) * the weighted integral of g' t^(n-j) / q;
    // the sign comes from dq/ds_j = (-1)^j t^(n-j) after integrating by parts
    let mut rng = rng(43);
    let d = DomainSpec::unit_disc();
    let h = 1e-5;
    let nodes = 2048;
    for _ in 0..25 {
        let n = rng.random_range(2..=4);
        let z = tuple_in_disc(&mut rng, n, 0.8);
        let s = elem_sym(&z).unwrap();
        let g = random_poly_map(&mut rng, 5, 1.0);
        let g_prime = g.differentiate().unwrap();
        for j in 1..=n {
            let mut plus = s.coeffs().to_vec();
            let mut minus = plus.clone();
            plus[j - 1] += Complex64::new(h, 0.0);
            minus[j - 1] -= Complex64::new(h, 0.0);
            let gp = g_op(&g, &SymPoint::new(plus).unwrap(), &d, nodes).unwrap();
            let gm = g_op(&g, &SymPoint::new(minus).unwrap(), &d, nodes).unwrap();
            let fd = (gp - gm) / (2.0 * h);

            let sign = if (j + 1) % 2 == 1 { -1.0 } else { 1.0 };
            let weighted = j_op(&g_prime, &s, 1, n - j, &d, nodes).unwrap();
            let rhs = sign * weighted / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
            let denom = fd.norm().max(1e-6);
            assert!(
                (fd - rhs).norm() / denom <= 1e-4,
                "derivative identity off at n={n}, j={j}: fd={fd}, rhs={rhs}"
            );
        }
    }
}

#[test]
fn gamma_round_trip_with_separated_clusters() {
    let mut rng = rng(44);
    let d = DomainSpec::unit_disc();
    for _ in 0..50 {
        // pick cluster centers separated by at least 0.25
        let k = rng.random_range(1..=3);
        let mut centers: Vec<Complex64> = Vec::new();
        while centers.len() < k {
            let c = complex_in_disc(&mut rng, 0.6);
            if centers.iter().all(|p| (p - c).norm() >= 0.25) {
                centers.push(c);
            }
        }
        let mut roots = Vec::new();
        let mut discs = Vec::new();
        for &c in &centers {
            let mult = rng.random_range(1..=2);
            for _ in 0..mult {
                roots.push(c);
            }
            discs.push(GammaDisc {
                center: c + Complex64::new(0.01, -0.005),
                radius: 0.09,
                multiplicity: mult,
            });
        }
        let s = elem_sym(&roots).unwrap();
        let recovered = gamma_inverse(&s, &discs, &d, 512).unwrap();
        let back = elem_sym(recovered.roots()).unwrap();
        assert!(
            back.max_dist(&s) <= 1e-8 * s.scale(),
            "gamma round trip residual too large"
        );
    }
}

#[test]
fn diagonal_cauchy_identity_for_j_op() {
    // at the diagonal image of w: J u = 2 pi i u^(mn-1)(w)/(mn-1)!
    let d = DomainSpec::unit_disc();
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let witnesses = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.3, 0.0),
        Complex64::from_polar(0.6, std::f64::consts::PI / 4.0),
    ];
    let mut rng = rng(45);
    for (m, n) in [(1usize, 2usize), (1, 3), (2, 2)] {
        let u = random_poly_map(&mut rng, m * n + 3, 1.0);
        for &w in &witnesses {
            let s = diagonal_embed(w, n).unwrap();
            let got = j_op(&u, &s, m, 0, &d, 1024).unwrap();
            let order = m * n - 1;
            // independent oracle: differentiate the coefficient list by hand
            let deriv = poly_derivative_value(&u, w, order);
            let factorial: f64 = (1..=order).map(|v| v as f64).product();
            let expect = two_pi_i * deriv / factorial;
            assert!(
                (got - expect).norm() <= 1e-8,
                "diagonal identity off for (m,n)=({m},{n}), w={w}"
            );
        }
    }
}

/// Order-k derivative of a polynomial map at `w`, from the coefficient list
/// by the falling-factorial formula (independent of the jet machinery).
fn poly_derivative_value(p: &HoloMap, w: Complex64, k: usize) -> Complex64 {
    let spec = serde_json::to_value(p).unwrap();
    let coeffs: Vec<Complex64> = spec["coeffs"]
        .as_array()
        .expect("polynomial map")
        .iter()
        .map(|pair| Complex64::new(pair[0].as_f64().unwrap(), pair[1].as_f64().unwrap()))
        .collect();
    let mut value = Complex64::new(0.0, 0.0);
    for (i, &c) in coeffs.iter().enumerate().skip(k) {
        let falling: f64 = (i - k + 1..=i).map(|v| v as f64).product();
        value += c * falling * w.powu((i - k) as u32);
    }
    value
}

#[test]
fn factor_recovery_splits_an_induced_map() {
    // A map of symmetric products that is induced by a one-variable proper
    // map is determined by its action on the diagonal: recover the factor
    // pointwise there, then check that applying the recovered factor fiber
    // by fiber regenerates the map at non-diagonal points.
    let mut rng = rng(47);
    let phi = HoloMap::blaschke(
        vec![Complex64::new(0.35, 0.0), Complex64::new(-0.1, 0.45)],
        Complex64::new(0.0, -1.0),
    )
    .unwrap();
    let n = 3;
    let induced = |s: &SymPoint| sigma_phi_direct(&phi, s).map(|r| r.value);

    // pointwise recovery on the diagonal matches the factor
    for _ in 0..50 {
        let w = complex_in_disc(&mut rng, 0.95);
        let recovered = symprod_core::recover_factor(induced, w, n, 1e-8).unwrap();
        assert!((recovered.value - phi.eval(w).unwrap()).norm() <= 1e-10);
        assert!(recovered.residual <= 1e-10);
    }

    // the recovered factor regenerates the map away from the diagonal
    for _ in 0..50 {
        let z = tuple_in_disc(&mut rng, n, 0.9);
        let s = elem_sym(&z).unwrap();
        let through_fibers = elem_sym(
            &z.iter()
                .map(|&zi| {
                    symprod_core::recover_factor(induced, zi, n, 1e-8)
                        .unwrap()
                        .value
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let direct = induced(&s).unwrap();
        assert!(
            through_fibers.max_dist(&direct) <= 1e-9 * direct.scale(),
            "recovered factor does not regenerate the induced map"
        );
    }

    // a map that is not induced by any factor is refused
    let not_induced = |s: &SymPoint| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[1] += Complex64::new(0.3, 0.0);
        SymPoint::new(coeffs)
    };
    let err = symprod_core::recover_factor(not_induced, Complex64::new(0.2, 0.1), n, 1e-8);
    assert!(err.is_err());
}

#[test]
fn j_op_stays_bounded_near_the_diagonal() {
    // finiteness smoke test: sup |J u| over interior points with clusters
    // collapsing down to separation 1e-3 stays within a factor 10 of
    // well-separated reference values
    let mut rng = rng(46);
    let d = DomainSpec::unit_disc();
    let u = HoloMap::polynomial(vec![
        Complex64::new(0.7, 0.1),
        Complex64::new(-0.3, 0.4),
        Complex64::new(0.2, -0.2),
        Complex64::new(0.05, 0.0),
    ])
    .unwrap();
    let (m, n) = (1usize, 3usize);
    let nodes = 512;

    let mut reference: f64 = 0.0;
    for _ in 0..20 {
        let mut z = Vec::new();
        while z.len() < n {
            let c = complex_in_disc(&mut rng, 0.6);
            if z.iter().all(|p: &Complex64| (p - c).norm() >= 0.3) {
                z.push(c);
            }
        }
        let s = elem_sym(&z).unwrap();
        reference = reference.max(j_op(&u, &s, m, 0, &d, nodes).unwrap().norm());
    }

    let mut sup: f64 = 0.0;
    for _ in 0..10_000 {
        let anchor = complex_in_disc(&mut rng, 0.6);
        let separation = 10f64.powf(rng.random_range(-3.0..-0.5));
        let z: Vec<Complex64> = (0..n)
            .map(|_| anchor + complex_in_disc(&mut rng, separation))
            .collect();
        let s = elem_sym(&z).unwrap();
        sup = sup.max(j_op(&u, &s, m, 0, &d, nodes).unwrap().norm());
    }
    assert!(
        sup <= 10.0 * reference,
        "near-diagonal sup {sup:.3e} blew past reference {reference:.3e}"
    );
}
