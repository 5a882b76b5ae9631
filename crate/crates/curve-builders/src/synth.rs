use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::BuildError;

/// Samples a noisy polynomial: x ~ U(x_min, x_max), y = p(x) + sigma * z
/// with z standard normal and p the polynomial with the given coefficients
/// in ascending-degree order. Deterministic in the seed; the natural input
/// for [`polynomial_nll_curve`](crate::polynomial_nll_curve).
pub fn polynomial_sample(
    coefficients: &[f64],
    noise_sigma: f64,
    count: usize,
    x_min: f64,
    x_max: f64,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>), BuildError> {
    if coefficients.is_empty() {
        return Err(BuildError::invalid_input("no polynomial coefficients"));
    }
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(BuildError::invalid_input(
            "polynomial coefficients must be finite",
        ));
    }
    // !(>= 0) instead of < 0: rejects NaN as well.
    if !(noise_sigma >= 0.0) || !noise_sigma.is_finite() {
        return Err(BuildError::invalid_input(format!(
            "noise sigma must be finite and non-negative, got {noise_sigma}"
        )));
    }
    if count == 0 {
        return Err(BuildError::invalid_input("sample count must be at least 1"));
    }
    if !x_min.is_finite() || !x_max.is_finite() || !(x_min < x_max) {
        return Err(BuildError::invalid_input(format!(
            "x range [{x_min}, {x_max}] must be finite and non-empty"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::with_capacity(count);
    let mut ys = Vec::with_capacity(count);
    for _ in 0..count {
        let x = x_min + (x_max - x_min) * rng.random::<f64>();
        let mut y = 0.0;
        for &c in coefficients.iter().rev() {
            y = y * x + c;
        }
        let noise: f64 = StandardNormal.sample(&mut rng);
        xs.push(x);
        ys.push(y + noise_sigma * noise);
    }
    Ok((xs, ys))
}
