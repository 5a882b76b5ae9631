use nalgebra::{DMatrix, DVector};

use crate::BuildError;

/// Regression data: N targets and an N x K feature matrix whose columns
/// are ordered by presumed importance. The nested model of dimension k
/// uses the first k columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    targets: DVector<f64>,
    features: DMatrix<f64>,
}

impl Dataset {
    /// Builds from one feature row per observation. Rows must share a
    /// width and every entry must be finite. Zero-width rows are allowed
    /// (an intercept-only dataset).
    pub fn new(targets: Vec<f64>, feature_rows: Vec<Vec<f64>>) -> Result<Self, BuildError> {
        let n = targets.len();
        if n == 0 {
            return Err(BuildError::invalid_input("dataset has no observations"));
        }
        if feature_rows.len() != n {
            return Err(BuildError::invalid_input(format!(
                "{} targets but {} feature rows",
                n,
                feature_rows.len()
            )));
        }
        if let Some(i) = targets.iter().position(|v| !v.is_finite()) {
            return Err(BuildError::invalid_input(format!(
                "target {i} is not finite"
            )));
        }
        let width = feature_rows[0].len();
        for (i, row) in feature_rows.iter().enumerate() {
            if row.len() != width {
                return Err(BuildError::invalid_input(format!(
                    "feature row {i} has {} entries, expected {width}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(BuildError::invalid_input(format!(
                    "feature ({i}, {j}) is not finite"
                )));
            }
        }
        Ok(Self {
            targets: DVector::from_vec(targets),
            features: DMatrix::from_row_iterator(n, width, feature_rows.into_iter().flatten()),
        })
    }

    /// Number of observations N.
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// Number of feature columns K.
    pub fn feature_count(&self) -> usize {
        self.features.ncols()
    }

    pub(crate) fn targets(&self) -> &DVector<f64> {
        &self.targets
    }

    pub(crate) fn features(&self) -> &DMatrix<f64> {
        &self.features
    }
}
