//! Spectral information criterion: automatic elbow selection on error curves.
//!
//! An error curve V(k) records the fitting error of the best model of each
//! dimension k = 0..=K (negative max log-likelihood, within-cluster variance,
//! 1 - accuracy, ...). Picking a model with a classical information criterion
//! means minimizing the penalized cost C(k, lambda) = V(k) + lambda * k at one
//! fixed penalty slope: BIC uses lambda = log N, AIC uses 2, and so on.
//!
//! Instead of committing to one slope, this crate scans the whole useful range
//! [0, lambda_max], where lambda_max is the smallest slope at which the empty
//! model wins. The minimizer k*(lambda) is piecewise constant, so the scan
//! partitions the range into intervals S_k; the normalized interval lengths
//! w_k = |S_k| / lambda_max form a weight spectrum over model dimensions. Its
//! support is the set of elbow candidates (exactly the lower-convex-hull
//! vertices of the curve), and the smallest k whose cumulative weight reaches
//! a confidence level (0.9 and 0.95 by default) is the selected dimension.
//!
//! The partition is computed three ways: exactly from the hull
//! ([`weights_exact`]), on a deterministic midpoint grid ([`weights_grid`]),
//! and by Monte Carlo sampling of lambda ([`weights_mc`]). The sampled engines
//! exist to cross-check the exact one and to mirror setups where only
//! pointwise cost evaluation is available.

#![forbid(unsafe_code)]

mod baselines;
mod curve;
mod error;
mod partition;
mod report;
mod spectrum;

pub use baselines::{baseline_lambda, ic_select, Criterion};
pub use curve::ErrorCurve;
pub use error::SicError;
pub use partition::{interval_partition_exact, IntervalPartition};
pub use report::{BaselinePick, LevelSelection, SelectionReport};
pub use spectrum::{
    weights_exact, weights_grid, weights_mc, weights_mc_partitioned, WeightMethod, WeightSpectrum,
};

/// Confidence levels used when the caller does not supply any.
pub const DEFAULT_LEVELS: [f64; 2] = [0.9, 0.95];
