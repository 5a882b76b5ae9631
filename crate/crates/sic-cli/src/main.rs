//! `sic`: elbow selection on error curves from the command line.
//!
//! Three entry points: `analyze` ingests a curve CSV and reports the
//! weight spectrum, elbow set, level selections, and classical-criterion
//! baselines; `build-curve` turns raw data or a synthetic description
//! into that CSV; `demo` replays canned scenarios with fixed seeds.
//!
//! Exit codes: 0 success (degenerate curves included), 1 input error,
//! 2 numerical failure inside a builder (rank deficiency, zero residual,
//! non-PSD matrix, collapsed dispersion).

#![forbid(unsafe_code)]

mod analyze;
mod build;
mod demo;
mod io;

use std::env;
use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::analyze::AnalyzeArgs;
use crate::build::BuildCommand;
use crate::demo::DemoArgs;

#[derive(Parser)]
#[command(
    name = "sic",
    version,
    about = "Elbow selection on error curves via penalty-slope weight spectra",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a curve CSV: weights, elbow set, selections, baselines
    Analyze(AnalyzeArgs),
    /// Build a curve CSV from raw data or a synthetic description
    #[command(subcommand)]
    BuildCurve(BuildCommand),
    /// Replay a canned scenario end to end with fixed seeds
    Demo(DemoArgs),
}

/// CLI failures split by exit code: bad input (1) versus numerical
/// breakdown while computing (2).
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) | CliError::Numerical(message) => f.write_str(message),
        }
    }
}

impl From<sic_core::SicError> for CliError {
    fn from(err: sic_core::SicError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<curve_builders::BuildError> for CliError {
    fn from(err: curve_builders::BuildError) -> Self {
        if err.is_invalid_input() {
            CliError::Input(err.to_string())
        } else {
            CliError::Numerical(err.to_string())
        }
    }
}

/// Seed precedence: explicit flag, then the SIC_SEED variable, then 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match env::var("SIC_SEED") {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            CliError::Input(format!(
                "SIC_SEED must be an unsigned integer, got {text:?}"
            ))
        }),
        Err(env::VarError::NotPresent) => Ok(0),
        Err(env::VarError::NotUnicode(_)) => {
            Err(CliError::Input("SIC_SEED is not valid unicode".to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // -h/-V land here too; only genuine usage errors are failures.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Analyze(args) => analyze::cmd_analyze(args),
        Command::BuildCurve(command) => build::cmd_build_curve(command),
        Command::Demo(args) => demo::cmd_demo(args.name),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
