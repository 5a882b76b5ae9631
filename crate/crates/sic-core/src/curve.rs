use crate::SicError;

/// An error curve: the fitting error V(k) of the best model of each
/// dimension k = 0..=K, with index 0 the empty model.
///
/// Values are typically non-increasing (a larger model fits no worse), but
/// every operation is defined for arbitrary finite values;
/// [`is_non_increasing`](ErrorCurve::is_non_increasing) is available as a
/// diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurve {
    values: Vec<f64>,
}

impl ErrorCurve {
    /// Wraps a value sequence. The curve must be non-empty and finite.
    pub fn new(values: Vec<f64>) -> Result<Self, SicError> {
        if values.is_empty() {
            return Err(SicError::EmptyCurve);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(SicError::NonFinite { index, value });
            }
        }
        Ok(Self { values })
    }

    /// V(0)..=V(K) in dimension order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// K, the largest model dimension on the curve.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// True when V(k+1) <= V(k) everywhere.
    pub fn is_non_increasing(&self) -> bool {
        self.values.windows(2).all(|pair| pair[1] <= pair[0])
    }

    /// The curve shifted so its minimum sits at zero. Selection is
    /// shift-invariant, so this is presentational; note that the AED
    /// baseline reads V(0) from whatever curve it is handed, so callers
    /// keep the raw curve around for baselines.
    pub fn normalized(&self) -> Self {
        let min = self.values.iter().fold(f64::INFINITY, |acc, &v| acc.min(v));
        Self {
            values: self.values.iter().map(|v| v - min).collect(),
        }
    }

    /// Penalized cost C(k, lambda) = V(k) + lambda * k.
    pub fn cost(&self, k: usize, lambda: f64) -> Result<f64, SicError> {
        match self.values.get(k) {
            Some(&v) => Ok(v + lambda * k as f64),
            None => Err(SicError::IndexOutOfRange {
                index: k,
                max_index: self.max_index(),
            }),
        }
    }

    /// The largest penalty slope worth scanning: the steepest descent chord
    /// max_k (V(0) - V(k))/k, floored at zero. At or above it the empty
    /// model is optimal.
    pub fn lambda_max(&self) -> f64 {
        let v0 = self.values[0];
        let mut best = 0.0f64;
        for (k, &v) in self.values.iter().enumerate().skip(1) {
            let chord = (v0 - v) / k as f64;
            if chord > best {
                best = chord;
            }
        }
        best
    }

    /// The smallest dimension minimizing C(k, lambda). Ties break toward
    /// the smaller model.
    pub fn argmin_cost(&self, lambda: f64) -> usize {
        assert!(
            lambda >= 0.0,
            "penalty slope must be non-negative, got {lambda}"
        );
        argmin_cost_values(&self.values, lambda)
    }
}

/// Shared inner loop of the exact, grid, and Monte Carlo engines. The
/// strict `<` keeps the smallest index on ties.
pub(crate) fn argmin_cost_values(values: &[f64], lambda: f64) -> usize {
    let mut best_k = 0;
    let mut best_cost = values[0];
    for (k, &v) in values.iter().enumerate().skip(1) {
        let cost = v + lambda * k as f64;
        if cost < best_cost {
            best_k = k;
            best_cost = cost;
        }
    }
    best_k
}
