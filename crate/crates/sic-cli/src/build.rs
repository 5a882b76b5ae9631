//! `build-curve`: one subcommand per curve constructor. Each reads its
//! input format, delegates to the library builder, and writes the curve
//! CSV to --output or stdout.

use std::path::PathBuf;

use clap::Subcommand;
use curve_builders::{
    accuracy_curve, eigen_curve, eigen_curve_from_data, gaussian_nll_curve, kmeans_variance_curve,
    piecewise_linear_curve, polynomial_nll_curve, Dataset, PiecewiseLinearSpec, PointCloud,
};

use crate::{io, resolve_seed, CliError};

#[derive(Subcommand)]
pub enum BuildCommand {
    /// Polynomial-order NLL curve from an x,y sample CSV
    Poly {
        /// Sample CSV with header `x,y`
        input: PathBuf,
        /// Largest polynomial order to fit
        #[arg(long)]
        max_order: usize,
        /// Output curve CSV (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Nested linear-model NLL curve from a dataset CSV
    Nested {
        /// Dataset CSV with a header row; non-target columns are features
        /// in file order, most important first
        input: PathBuf,
        /// Name of the target column
        #[arg(long)]
        target: String,
        /// Fit without an intercept column
        #[arg(long)]
        no_intercept: bool,
        /// Output curve CSV (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Log within-cluster dispersion curve from a point cloud CSV
    Kmeans {
        /// Headerless CSV, one point per row
        input: PathBuf,
        /// Largest curve index; index k clusters into k+1 groups
        #[arg(long)]
        max_k: usize,
        /// Restarts averaged per dimension
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        /// RNG seed (falls back to SIC_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Output curve CSV (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scree curve from a covariance matrix CSV
    Eigen {
        /// Headerless d x d matrix CSV, or a data matrix with --from-data
        input: PathBuf,
        /// Treat the input as raw observations and form the sample covariance
        #[arg(long)]
        from_data: bool,
        /// Output curve CSV (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 1 - accuracy curve from a list of accuracies in [0, 1]
    Accuracy {
        /// One accuracy per line; the first is the zero-dimension model
        input: PathBuf,
        /// Output curve CSV (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Piecewise-linear curve from breakpoint and value lists
    Ideal {
        /// Comma-separated breakpoints, ascending from 0
        #[arg(long, value_delimiter = ',', required = true)]
        breakpoints: Vec<usize>,
        /// Comma-separated curve values at the breakpoints
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        values: Vec<f64>,
        /// Output curve CSV (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

pub fn cmd_build_curve(command: &BuildCommand) -> Result<(), CliError> {
    match command {
        BuildCommand::Poly {
            input,
            max_order,
            output,
        } => {
            let (x, y) = io::read_xy(input)?;
            let curve = polynomial_nll_curve(&x, &y, *max_order)?;
            io::write_curve(curve.values(), output.as_deref())
        }
        BuildCommand::Nested {
            input,
            target,
            no_intercept,
            output,
        } => {
            let (targets, rows) = io::read_dataset(input, target)?;
            let data = Dataset::new(targets, rows)?;
            let curve = gaussian_nll_curve(&data, !no_intercept)?;
            io::write_curve(curve.values(), output.as_deref())
        }
        BuildCommand::Kmeans {
            input,
            max_k,
            restarts,
            seed,
            output,
        } => {
            let rows = io::read_float_rows(input, "points")?;
            let cloud = PointCloud::from_rows(&rows)?;
            let curve = kmeans_variance_curve(&cloud, *max_k, *restarts, resolve_seed(*seed)?)?;
            io::write_curve(curve.values(), output.as_deref())
        }
        BuildCommand::Eigen {
            input,
            from_data,
            output,
        } => {
            let rows = io::read_float_rows(input, "matrix")?;
            let curve = if *from_data {
                eigen_curve_from_data(&rows)?
            } else {
                eigen_curve(&rows)?
            };
            io::write_curve(curve.values(), output.as_deref())
        }
        BuildCommand::Accuracy { input, output } => {
            let values = io::read_values(input)?;
            let curve = accuracy_curve(&values)?;
            io::write_curve(curve.values(), output.as_deref())
        }
        BuildCommand::Ideal {
            breakpoints,
            values,
            output,
        } => {
            let spec = PiecewiseLinearSpec::new(breakpoints.clone(), values.clone())?;
            let curve = piecewise_linear_curve(&spec);
            io::write_curve(curve.values(), output.as_deref())
        }
    }
}
