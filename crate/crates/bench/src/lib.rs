//! Deterministic input generators shared by the benchmarks.

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

/// A batch of root tuples for solver benchmarks.
pub fn root_tuples(seed: u64, count: usize, n: usize, radius: f64) -> Vec<Vec<Complex64>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| (0..n).map(|_| complex_in_disc(&mut rng, radius)).collect())
        .collect()
}
