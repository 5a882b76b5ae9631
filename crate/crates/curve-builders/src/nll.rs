use sic_core::ErrorCurve;

use crate::{fit_prefix, BuildError, Dataset};

/// Residuals this far below the target spread count as an exact fit;
/// the profile likelihood has no maximum there (log of zero).
const RSS_FLOOR_REL: f64 = 1e-20;

/// Nested Gaussian likelihood curve: V(k) = -2 log of the profile
/// likelihood of the model using the first k feature columns, with the
/// noise variance maximized out:
///
///   V(k) = N log(2 pi) + N log(RSS_k / N) + N
///
/// With an intercept, the k = 0 model is intercept-only, so RSS_0 is
/// N times the sample variance of the targets.
pub fn gaussian_nll_curve(data: &Dataset, include_intercept: bool) -> Result<ErrorCurve, BuildError> {
    let n = data.len() as f64;
    let y = data.targets();
    let mean = y.mean();
    let spread = y.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
    let mut values = Vec::with_capacity(data.feature_count() + 1);
    for k in 0..=data.feature_count() {
        let rss = fit_prefix(data, k, include_intercept)?.residual_sum_of_squares();
        if rss <= RSS_FLOOR_REL * spread || rss <= 0.0 {
            return Err(BuildError::ZeroResidual { k });
        }
        values.push(n * (2.0 * std::f64::consts::PI).ln() + n * (rss / n).ln() + n);
    }
    Ok(ErrorCurve::new(values).expect("positive residuals give finite values"))
}

/// Likelihood curve over polynomial orders 0..=max_order for scalar pairs
/// (x, y): dimension k fits intercept plus powers x..x^k.
pub fn polynomial_nll_curve(
    x: &[f64],
    y: &[f64],
    max_order: usize,
) -> Result<ErrorCurve, BuildError> {
    if x.len() != y.len() {
        return Err(BuildError::invalid_input(format!(
            "{} inputs but {} outputs",
            x.len(),
            y.len()
        )));
    }
    if x.len() <= max_order {
        return Err(BuildError::invalid_input(format!(
            "need more than {max_order} observations for order {max_order}, got {}",
            x.len()
        )));
    }
    if max_order >= 1 && x.iter().all(|&v| v == x[0]) {
        return Err(BuildError::invalid_input(
            "all inputs are identical; polynomial orders past 0 are unidentifiable",
        ));
    }
    let rows = x
        .iter()
        .map(|&v| (1..=max_order).map(|p| v.powi(p as i32)).collect())
        .collect();
    let data = Dataset::new(y.to_vec(), rows)?;
    gaussian_nll_curve(&data, true)
}
