//! The analyze pipeline: curve in, weight spectrum and selections out.
//!
//! The spectrum runs on the (by default) min-shifted curve; selection is
//! shift-invariant, so this only affects presentation. Baselines always
//! run on the raw curve: AED reads V(0) from it, and BIC/AIC/HQIC
//! penalties are calibrated to raw -2 log-likelihood scales.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;
use sic_core::{
    baseline_lambda, weights_exact, weights_grid, weights_mc, BaselinePick, Criterion, ErrorCurve,
    LevelSelection, SelectionReport, WeightMethod, WeightSpectrum, DEFAULT_LEVELS,
};

use crate::{io, resolve_seed, CliError};

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Curve CSV: header `k,V`, dimensions 0..=K in order
    pub curve: PathBuf,

    /// Weight engine
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    pub method: Method,

    /// Sample count for the grid and mc engines
    #[arg(long = "M", default_value_t = 1_000_000)]
    pub samples: u64,

    /// RNG seed for the mc engine (falls back to SIC_SEED, then 0)
    #[arg(long)]
    pub seed: Option<u64>,

    /// Confidence level in (0, 1]; repeatable (default: 0.9 and 0.95)
    #[arg(long = "level")]
    pub levels: Vec<f64>,

    /// Observation count behind the curve; enables BIC and HQIC
    #[arg(long)]
    pub n_data: Option<usize>,

    /// Run the spectrum on the raw values instead of min-shifted ones
    #[arg(long)]
    pub no_normalize: bool,

    /// Write the report as JSON to this file
    #[arg(long)]
    pub json: Option<PathBuf>,

    /// Write plot-ready CSV series (curve, weights, cumulative) into this directory
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Hull-based interval partition, no sampling error
    Exact,
    /// Midpoints of M equal slope subintervals
    Grid,
    /// M uniform slope draws
    Mc,
}

/// Everything analyze derives from one curve, kept together so the text,
/// JSON, and plot renderings agree with each other.
pub struct Analysis {
    raw: ErrorCurve,
    spectrum: WeightSpectrum,
    report: SelectionReport,
    /// W_0..=W_K: the library's W_1..=W_K padded with W_0 = 0 so the
    /// cumulative series aligns index-wise with the weights.
    cumulative: Vec<f64>,
    notes: Vec<String>,
    normalized: bool,
}

pub struct AnalysisOptions {
    pub method: Method,
    pub samples: u64,
    pub seed: u64,
    pub levels: Vec<f64>,
    pub n_data: Option<usize>,
    pub normalize: bool,
}

impl AnalysisOptions {
    pub fn from_args(args: &AnalyzeArgs) -> Result<Self, CliError> {
        Ok(Self {
            method: args.method,
            samples: args.samples,
            seed: resolve_seed(args.seed)?,
            levels: if args.levels.is_empty() {
                DEFAULT_LEVELS.to_vec()
            } else {
                args.levels.clone()
            },
            n_data: args.n_data,
            normalize: !args.no_normalize,
        })
    }
}

impl Analysis {
    pub fn run(values: Vec<f64>, options: &AnalysisOptions) -> Result<Self, CliError> {
        let raw = ErrorCurve::new(values)?;
        let curve = if options.normalize {
            raw.normalized()
        } else {
            raw.clone()
        };
        let spectrum = match options.method {
            Method::Exact => weights_exact(&curve),
            Method::Grid => weights_grid(&curve, options.samples)?,
            Method::Mc => weights_mc(&curve, options.samples, options.seed)?,
        };
        let mut report = SelectionReport::from_spectrum(&spectrum, &options.levels)?;
        let mut notes = Vec::new();
        for criterion in Criterion::ALL {
            if criterion.needs_data_count() && options.n_data.is_none() {
                notes.push(format!("{criterion} skipped: requires --n-data"));
                continue;
            }
            match baseline_lambda(criterion, options.n_data, &raw) {
                Ok(lambda) => report.baselines.push(BaselinePick {
                    criterion,
                    lambda,
                    k: raw.argmin_cost(lambda),
                }),
                Err(err) => notes.push(format!("{criterion} skipped: {err}")),
            }
        }
        let mut cumulative = Vec::with_capacity(report.cumulative.len() + 1);
        cumulative.push(0.0);
        cumulative.extend_from_slice(&report.cumulative);
        Ok(Self {
            raw,
            spectrum,
            report,
            cumulative,
            notes,
            normalized: options.normalize,
        })
    }

    pub fn render(&self, source: &str) -> String {
        let values = self.raw.values();
        let weights = self.spectrum.weights();
        let cumulative = &self.cumulative;
        let mut out = String::new();
        out.push_str(&format!("curve: {source} (K = {})\n", self.raw.max_index()));
        out.push_str(&format!("method: {}\n", method_label(self.spectrum.method())));
        if self.normalized {
            let min = values.iter().fold(f64::INFINITY, |acc, &v| acc.min(v));
            out.push_str(&format!(
                "normalization: V - min(V) before weighting (min V = {min}; table shows raw V)\n"
            ));
        } else {
            out.push_str("normalization: off (raw values)\n");
        }
        out.push_str(&format!("lambda_max: {:.6}\n", self.report.lambda_max));
        if self.report.degenerate {
            out.push_str(
                "DEGENERATE: no dimension ever beats k = 0; all weights are zero and every selection falls back to k = 0\n",
            );
        }
        out.push('\n');
        out.push_str(&format!(
            "{:>4}  {:>14}  {:>10}  {:>10}\n",
            "k", "V(k)", "w", "W"
        ));
        for (k, &v) in values.iter().enumerate() {
            out.push_str(&format!(
                "{k:>4}  {v:>14.6}  {:>10.6}  {:>10.6}\n",
                weights[k], cumulative[k]
            ));
        }
        out.push('\n');
        let elbow = self
            .report
            .elbow_set
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!("elbow set: {{{elbow}}}\n"));
        out.push_str("selection:\n");
        for selection in &self.report.selections {
            out.push_str(&format!(
                "  level {} -> k = {}\n",
                selection.level, selection.k
            ));
        }
        out.push_str("baselines (raw curve):\n");
        for pick in &self.report.baselines {
            out.push_str(&format!(
                "  {:<5} lambda = {:>10.6}  k = {}\n",
                pick.criterion.name(),
                pick.lambda,
                pick.k
            ));
        }
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        out
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        let json = JsonReport {
            max_index: self.raw.max_index(),
            lambda_max: self.report.lambda_max,
            degenerate: self.report.degenerate,
            normalized: self.normalized,
            method: self.spectrum.method(),
            weights: self.spectrum.weights(),
            cumulative: &self.cumulative,
            elbow_set: &self.report.elbow_set,
            selections: &self.report.selections,
            baselines: &self.report.baselines,
        };
        let mut text = serde_json::to_string_pretty(&json)
            .map_err(|err| CliError::Input(format!("cannot encode report: {err}")))?;
        text.push('\n');
        fs::write(path, text)
            .map_err(|err| CliError::Input(format!("cannot write {}: {err}", path.display())))
    }

    pub fn write_plot_data(&self, dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(dir)
            .map_err(|err| CliError::Input(format!("cannot create {}: {err}", dir.display())))?;
        let series = [
            ("curve.csv", "V", self.raw.values()),
            ("weights.csv", "w", self.spectrum.weights()),
            ("cumulative.csv", "W", self.cumulative.as_slice()),
        ];
        for (name, column, values) in series {
            let mut text = format!("k,{column}\n");
            for (k, value) in values.iter().enumerate() {
                text.push_str(&format!("{k},{value}\n"));
            }
            let path = dir.join(name);
            fs::write(&path, text).map_err(|err| {
                CliError::Input(format!("cannot write {}: {err}", path.display()))
            })?;
        }
        Ok(())
    }
}

fn method_label(method: WeightMethod) -> String {
    match method {
        WeightMethod::Exact => "exact".to_string(),
        WeightMethod::Grid { samples } => format!("grid (M = {samples})"),
        WeightMethod::Mc { samples, seed } => format!("mc (M = {samples}, seed = {seed})"),
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(rename = "K")]
    max_index: usize,
    lambda_max: f64,
    degenerate: bool,
    normalized: bool,
    method: WeightMethod,
    weights: &'a [f64],
    cumulative: &'a [f64],
    elbow_set: &'a [usize],
    selections: &'a [LevelSelection],
    baselines: &'a [BaselinePick],
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let values = io::read_curve(&args.curve)?;
    let options = AnalysisOptions::from_args(args)?;
    let analysis = Analysis::run(values, &options)?;
    print!("{}", analysis.render(&args.curve.display().to_string()));
    if let Some(path) = &args.json {
        analysis.write_json(path)?;
    }
    if let Some(dir) = &args.plot_data {
        analysis.write_plot_data(dir)?;
    }
    Ok(())
}
