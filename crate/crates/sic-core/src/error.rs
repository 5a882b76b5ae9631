use std::error::Error;
use std::fmt;

/// Errors from curve validation, spectrum construction, and baselines.
#[derive(Debug, Clone, PartialEq)]
pub enum SicError {
    /// The curve has no values.
    EmptyCurve,
    /// A curve value is NaN or infinite.
    NonFinite { index: usize, value: f64 },
    /// A model dimension beyond the end of the curve.
    IndexOutOfRange { index: usize, max_index: usize },
    /// A confidence level outside (0, 1].
    InvalidLevel { level: f64 },
    /// A sampled spectrum was requested with zero samples.
    ZeroSamples,
    /// A Monte Carlo spectrum was requested with zero worker partitions.
    ZeroPartitions,
    /// The criterion needs the number of observations and none was given.
    MissingDataCount { criterion: &'static str },
    /// Too few observations for the criterion's penalty to be positive.
    TooFewObservations {
        criterion: &'static str,
        minimum: usize,
        actual: usize,
    },
    /// The elbow-distance penalty is undefined: the curve minimum is at index 0.
    MinimumAtZero,
    /// A baseline penalty came out non-positive, outside the scanned slope range.
    NonPositivePenalty { criterion: &'static str, lambda: f64 },
}

impl fmt::Display for SicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SicError::EmptyCurve => write!(f, "error curve must contain at least one value"),
            SicError::NonFinite { index, value } => {
                write!(f, "non-finite curve value {value} at index {index}")
            }
            SicError::IndexOutOfRange { index, max_index } => {
                write!(f, "model dimension {index} out of range 0..={max_index}")
            }
            SicError::InvalidLevel { level } => {
                write!(f, "confidence level {level} outside (0, 1]")
            }
            SicError::ZeroSamples => write!(f, "sample count must be at least 1"),
            SicError::ZeroPartitions => write!(f, "partition count must be at least 1"),
            SicError::MissingDataCount { criterion } => {
                write!(f, "{criterion} requires the number of observations (N)")
            }
            SicError::TooFewObservations {
                criterion,
                minimum,
                actual,
            } => write!(
                f,
                "{criterion} needs at least {minimum} observations, got {actual}"
            ),
            SicError::MinimumAtZero => write!(
                f,
                "elbow-distance penalty undefined: curve minimum is at index 0"
            ),
            SicError::NonPositivePenalty { criterion, lambda } => {
                write!(f, "{criterion} penalty {lambda} is not positive")
            }
        }
    }
}

impl Error for SicError {}
