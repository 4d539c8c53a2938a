//! Property tests for the root solver: round trips through the
//! symmetrization, the properness bound on the fiber, and sampled Holder
//! continuity of roots in the coefficients.

mod common;

use common::{rng, tuple_in_disc};
use num_complex::Complex64;
use rand::Rng;
use symprod_core::{
    elem_sym, hausdorff_distance, roots_of, tuple_scale, RootSolveOptions, SymPoint,
};

#[test]
fn round_trip_multiset_equality() {
    let mut rng = rng(1);
    for _ in 0..2000 {
        let n = rng.random_range(1..=10);
        let z = tuple_in_disc(&mut rng, n, 2.0);
        let s = elem_sym(&z).unwrap();
        let r = roots_of(&s).unwrap();
        let scale = tuple_scale(&z);
        let d = hausdorff_distance(r.roots(), &z);
        assert!(d <= 1e-8 * scale, "round trip Hausdorff {d:.3e} at n={n}");
    }
}

#[test]
fn properness_bound_on_fiber() {
    // |s| <= r implies every root is in the ball of radius max(sqrt(n) r, 1)
    let mut rng = rng(2);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=8);
        let r_cap = rng.random_range(0.1..2.5f64);
        // sample s uniformly in the euclidean ball |s| <= r_cap
        let mut coords: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm: f64 = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let shrink = rng.random::<f64>().powf(1.0 / (2 * n) as f64) * r_cap / norm.max(1e-12);
        for c in coords.iter_mut() {
            *c *= shrink;
        }
        let s = SymPoint::new(coords).unwrap();
        let bound = ((n as f64).sqrt() * r_cap).max(1.0);
        let roots = roots_of(&s).unwrap();
        for &z in roots.roots() {
            assert!(
                z.norm() <= bound + 1e-8,
                "root {z} outside properness ball {bound} (n={n}, r={r_cap})"
            );
        }
    }
}

#[test]
fn holder_continuity_under_tiny_perturbation() {
    // moving s by 1e-12 moves the fiber by at most ~ (1e-12)^(1/n)
    let mut rng = rng(3);
    let delta = 1e-12;
    for _ in 0..300 {
        let n = rng.random_range(1..=6);
        let z = tuple_in_disc(&mut rng, n, 1.5);
        let s = elem_sym(&z).unwrap();
        let direction: Vec<Complex64> = (0..n)
            .map(|_| {
                let theta = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
                Complex64::from_polar(1.0, theta)
            })
            .collect();
        let norm: f64 = direction.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let perturbed = SymPoint::new(
            s.coeffs()
                .iter()
                .zip(direction.iter())
                .map(|(c, d)| c + d * (delta / norm))
                .collect(),
        )
        .unwrap();
        let a = roots_of(&s).unwrap();
        let b = roots_of(&perturbed).unwrap();
        let scale = tuple_scale(a.roots());
        let moved = hausdorff_distance(a.roots(), b.roots());
        assert!(
            moved <= 10.0 * delta.powf(1.0 / n as f64) * scale,
            "fiber moved {moved:.3e} for |ds| = 1e-12 at n={n}"
        );
    }
}

#[test]
fn solver_options_are_respected() {
    // a very coarse clustering tolerance merges everything nearby
    let z = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.05, 0.0),
        Complex64::new(0.9, 0.0),
    ];
    let s = elem_sym(&z).unwrap();
    let fine = roots_of(&s).unwrap();
    assert_eq!(fine.partition_type().k, 3);
    let coarse = roots_of_coarse(&s, 0.1);
    assert_eq!(coarse.partition_type().k, 2);
    assert_eq!(coarse.partition_type().multiplicities, vec![1, 2]);
}

fn roots_of_coarse(s: &SymPoint, cluster_tol: f64) -> symprod_core::RootMultiset {
    symprod_core::roots_of_with(
        s,
        RootSolveOptions {
            cluster_tol,
            ..RootSolveOptions::default()
        },
    )
    .unwrap()
}
