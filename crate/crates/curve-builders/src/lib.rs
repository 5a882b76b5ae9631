#![forbid(unsafe_code)]

//! Constructors for the error curves consumed by `sic-core`.
//!
//! Each builder turns raw data or a synthetic description into a
//! non-increasing (or nearly so) sequence V(0..=K):
//!
//! * [`gaussian_nll_curve`] / [`polynomial_nll_curve`]: -2 max
//!   log-likelihood of nested Gaussian linear models, fitted by
//!   SVD-backed least squares.
//! * [`kmeans_variance_curve`]: log of restart-averaged within-cluster
//!   dispersion, k+1 clusters at index k.
//! * [`eigen_curve`] / [`eigen_curve_from_data`]: scree curve of a
//!   covariance matrix (trace at 0, sorted eigenvalues after).
//! * [`accuracy_curve`]: 1 - accuracy for classification problems.
//! * [`piecewise_linear_curve`]: integer samples of an idealized
//!   breakpoint description, handy for calibration scenarios.
//! * [`gaussian_mixture_cloud`] / [`polynomial_sample`]: reproducible
//!   synthetic inputs for the clustering and polynomial builders.
//!
//! All stochastic builders are deterministic functions of their seed.

mod accuracy;
mod dataset;
mod eigen;
mod error;
mod kmeans;
mod least_squares;
mod mixture;
mod nll;
mod piecewise;
mod synth;

pub use accuracy::accuracy_curve;
pub use dataset::Dataset;
pub use eigen::{eigen_curve, eigen_curve_from_data};
pub use error::BuildError;
pub use kmeans::{
    kmeans_variance_curve, kmeans_variance_curve_with, Dispersion, KmeansOptions, PointCloud,
};
pub use least_squares::{fit_prefix, LinearModelFit};
pub use mixture::gaussian_mixture_cloud;
pub use nll::{gaussian_nll_curve, polynomial_nll_curve};
pub use piecewise::{piecewise_linear_curve, PiecewiseLinearSpec};
pub use synth::polynomial_sample;
