use nalgebra::DMatrix;

use crate::{BuildError, Dataset};

/// An ordinary-least-squares fit of a nested model.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModelFit {
    coefficients: Vec<f64>,
    residual_sum_of_squares: f64,
    sigma2_hat: f64,
}

impl LinearModelFit {
    /// Fitted coefficients, intercept first when one was included.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn residual_sum_of_squares(&self) -> f64 {
        self.residual_sum_of_squares
    }

    /// The profile maximum-likelihood noise variance, RSS/N.
    pub fn sigma2_hat(&self) -> f64 {
        self.sigma2_hat
    }
}

/// Least-squares fit of the targets on the first `k` feature columns,
/// optionally with an intercept column (not counted in k). Solved through
/// an SVD rather than the normal equations so ill-conditioned designs
/// (high-order Vandermonde blocks) keep full accuracy; a design that is
/// rank deficient at working precision is rejected.
pub fn fit_prefix(
    data: &Dataset,
    k: usize,
    include_intercept: bool,
) -> Result<LinearModelFit, BuildError> {
    if k > data.feature_count() {
        return Err(BuildError::invalid_input(format!(
            "model dimension {k} exceeds the {} available features",
            data.feature_count()
        )));
    }
    let n = data.len();
    let y = data.targets();
    let intercept = usize::from(include_intercept);
    let cols = k + intercept;
    if cols == 0 {
        // The empty model predicts zero everywhere.
        let rss = y.norm_squared();
        return Ok(LinearModelFit {
            coefficients: Vec::new(),
            residual_sum_of_squares: rss,
            sigma2_hat: rss / n as f64,
        });
    }
    if n < cols {
        return Err(BuildError::invalid_input(format!(
            "{n} observations cannot identify {cols} coefficients"
        )));
    }
    let mut design = DMatrix::zeros(n, cols);
    if include_intercept {
        design.column_mut(0).fill(1.0);
    }
    for j in 0..k {
        design.set_column(j + intercept, &data.features().column(j));
    }
    let svd = design.clone().svd(true, true);
    let eps = svd.singular_values.max() * n.max(cols) as f64 * f64::EPSILON;
    if svd.rank(eps) < cols {
        return Err(BuildError::RankDeficient { k });
    }
    let theta = svd
        .solve(y, eps)
        .expect("solve cannot fail: both singular vector sets were computed");
    let rss = (y - design * &theta).norm_squared();
    Ok(LinearModelFit {
        coefficients: theta.iter().copied().collect(),
        residual_sum_of_squares: rss,
        sigma2_hat: rss / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn line_data() -> Dataset {
        // y = 2 + 3x, exactly.
        let x = [-2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
        let y = x.iter().map(|v| 2.0 + 3.0 * v).collect();
        Dataset::new(y, x.iter().map(|&v| vec![v]).collect()).unwrap()
    }

    #[test]
    fn recovers_exact_coefficients() {
        let fit = fit_prefix(&line_data(), 1, true).unwrap();
        assert_abs_diff_eq!(fit.coefficients()[0], 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.coefficients()[1], 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.residual_sum_of_squares(), 0.0, epsilon = 1e-18);
    }

    #[test]
    fn intercept_only_fit_is_the_mean() {
        let fit = fit_prefix(&line_data(), 0, true).unwrap();
        // Mean of y over x in {-2..3} is 2 + 3 * 0.5.
        assert_abs_diff_eq!(fit.coefficients()[0], 3.5, epsilon = 1e-12);
    }

    #[test]
    fn empty_model_predicts_zero() {
        let fit = fit_prefix(&line_data(), 0, false).unwrap();
        assert!(fit.coefficients().is_empty());
        let expected: f64 = [-4.0, -1.0, 2.0, 5.0, 8.0, 11.0]
            .iter()
            .map(|v| v * v)
            .sum();
        assert_abs_diff_eq!(fit.residual_sum_of_squares(), expected, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.sigma2_hat(), expected / 6.0, epsilon = 1e-10);
    }

    #[test]
    fn rejects_duplicate_columns() {
        let data = Dataset::new(
            vec![1.0, 2.0, 3.0, 4.0],
            vec![
                vec![1.0, 1.0],
                vec![2.0, 2.0],
                vec![3.0, 3.0],
                vec![4.0, 4.0],
            ],
        )
        .unwrap();
        assert_eq!(
            fit_prefix(&data, 2, false),
            Err(BuildError::RankDeficient { k: 2 })
        );
    }

    #[test]
    fn rejects_more_coefficients_than_observations() {
        let data = Dataset::new(vec![1.0, 2.0], vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert!(matches!(
            fit_prefix(&data, 2, true),
            Err(BuildError::InvalidInput(_))
        ));
        assert!(matches!(
            fit_prefix(&data, 3, true),
            Err(BuildError::InvalidInput(_))
        ));
    }
}
