//! Shared sampling helpers for the property suites.
#![allow(dead_code)] // each suite uses its own subset

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the closed disc of the given radius.
pub fn complex_in_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
    Complex64::from_polar(r, theta)
}

/// Uniform in the square `[-half, half]^2`.
pub fn complex_in_box(rng: &mut ChaCha8Rng, half: f64) -> Complex64 {
    Complex64::new(
        rng.random_range(-half..half),
        rng.random_range(-half..half),
    )
}

pub fn tuple_in_disc(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n).map(|_| complex_in_disc(rng, radius)).collect()
}
