use std::fmt;

/// Failure while constructing an error curve or synthetic input.
///
/// `InvalidInput` marks malformed arguments (shape mismatches, out-of-range
/// or non-finite entries). Every other variant is a numerical failure of a
/// well-formed problem; callers that map errors to process exit codes can
/// split on [`is_invalid_input`](BuildError::is_invalid_input).
#[derive(Debug, Clone, PartialEq)]
pub enum BuildError {
    InvalidInput(String),
    /// The design matrix for the model of dimension k lost rank.
    RankDeficient { k: usize },
    /// An exact fit at dimension k: the profile likelihood is unbounded.
    ZeroResidual { k: usize },
    /// Average within-cluster dispersion hit zero; its log is undefined.
    DegenerateVariance { clusters: usize },
    /// Matrix entry (row, col) disagrees with its transpose partner.
    NotSymmetric { row: usize, col: usize },
    /// The most negative eigenvalue found, beyond rounding tolerance.
    NotPositiveSemiDefinite { eigenvalue: f64 },
    /// Mixture component whose covariance has no Cholesky factor.
    NonSpdComponent { component: usize },
}

impl BuildError {
    pub(crate) fn invalid_input(message: impl Into<String>) -> Self {
        Self::InvalidInput(message.into())
    }

    /// True for malformed arguments, false for numerical failures.
    pub fn is_invalid_input(&self) -> bool {
        matches!(self, Self::InvalidInput(_))
    }
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidInput(message) => write!(f, "invalid input: {message}"),
            Self::RankDeficient { k } => {
                write!(f, "design matrix is rank deficient at dimension {k}")
            }
            Self::ZeroResidual { k } => write!(
                f,
                "residual sum of squares vanished at dimension {k}; \
                 the Gaussian likelihood is unbounded"
            ),
            Self::DegenerateVariance { clusters } => write!(
                f,
                "within-cluster dispersion is zero with {clusters} clusters; \
                 its log is undefined"
            ),
            Self::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Self::NotPositiveSemiDefinite { eigenvalue } => {
                write!(f, "matrix has negative eigenvalue {eigenvalue}")
            }
            Self::NonSpdComponent { component } => write!(
                f,
                "covariance of component {component} is not symmetric positive definite"
            ),
        }
    }
}

impl std::error::Error for BuildError {}
