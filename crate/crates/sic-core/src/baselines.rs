use std::fmt;

use serde::Serialize;

use crate::{ErrorCurve, SicError};

/// Classical information criteria, each a single fixed penalty slope in
/// C(k, lambda) = V(k) + lambda * k once costs are on the -2 log-likelihood
/// scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Criterion {
    /// Bayesian information criterion: lambda = log N.
    Bic,
    /// Akaike information criterion: lambda = 2.
    Aic,
    /// Hannan-Quinn information criterion: lambda = log log N.
    Hqic,
    /// Automatic elbow detector: lambda = V(0) divided by the smallest
    /// index attaining the curve minimum.
    Aed,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [Criterion::Bic, Criterion::Aic, Criterion::Hqic, Criterion::Aed];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Bic => "BIC",
            Criterion::Aic => "AIC",
            Criterion::Hqic => "HQIC",
            Criterion::Aed => "AED",
        }
    }

    /// BIC and HQIC penalties depend on the number of observations N.
    pub fn needs_data_count(self) -> bool {
        matches!(self, Criterion::Bic | Criterion::Hqic)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The penalty slope a criterion applies. AED reads V(0) from the curve it
/// is handed, so pass the raw (un-normalized) curve; the other criteria
/// ignore the curve entirely.
pub fn baseline_lambda(
    criterion: Criterion,
    n_data: Option<usize>,
    curve: &ErrorCurve,
) -> Result<f64, SicError> {
    match criterion {
        Criterion::Bic => {
            let n = require_data_count(criterion, n_data, 2)?;
            Ok((n as f64).ln())
        }
        Criterion::Aic => Ok(2.0),
        Criterion::Hqic => {
            let n = require_data_count(criterion, n_data, 3)?;
            Ok((n as f64).ln().ln())
        }
        Criterion::Aed => {
            let values = curve.values();
            let mut arg = 0;
            for (k, &v) in values.iter().enumerate().skip(1) {
                if v < values[arg] {
                    arg = k;
                }
            }
            if arg == 0 {
                return Err(SicError::MinimumAtZero);
            }
            let lambda = values[0] / arg as f64;
            if lambda <= 0.0 {
                return Err(SicError::NonPositivePenalty {
                    criterion: criterion.name(),
                    lambda,
                });
            }
            Ok(lambda)
        }
    }
}

/// The dimension a classical criterion picks: the cost minimizer at the
/// criterion's slope. Whenever that slope falls strictly inside
/// (0, lambda_max) and off the interval breakpoints, the pick is one of
/// the elbow candidates by construction.
pub fn ic_select(
    curve: &ErrorCurve,
    criterion: Criterion,
    n_data: Option<usize>,
) -> Result<usize, SicError> {
    let lambda = baseline_lambda(criterion, n_data, curve)?;
    Ok(curve.argmin_cost(lambda))
}

fn require_data_count(
    criterion: Criterion,
    n_data: Option<usize>,
    minimum: usize,
) -> Result<usize, SicError> {
    let n = n_data.ok_or(SicError::MissingDataCount {
        criterion: criterion.name(),
    })?;
    if n < minimum {
        return Err(SicError::TooFewObservations {
            criterion: criterion.name(),
            minimum,
            actual: n,
        });
    }
    Ok(n)
}
