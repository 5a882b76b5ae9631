use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::argmin_cost_values;
use crate::{interval_partition_exact, ErrorCurve, SicError};

/// Worker-partition count used by `weights_mc`, fixed so spectra are
/// machine-independent; `weights_mc_partitioned` exposes the knob.
const DEFAULT_PARTITIONS: u32 = 64;

/// How a weight spectrum was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum WeightMethod {
    Exact,
    Grid { samples: u64 },
    Mc { samples: u64, seed: u64 },
}

/// The weight spectrum over model dimensions: w_k is the share of the
/// penalty range [0, lambda_max] on which dimension k is optimal.
///
/// w_0 = 0 always, and the weights sum to 1 - except for degenerate curves
/// (lambda_max = 0, nothing ever beats the empty model), where all weights
/// are zero and [`is_degenerate`](WeightSpectrum::is_degenerate) is set.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpectrum {
    weights: Vec<f64>,
    lambda_max: f64,
    method: WeightMethod,
    degenerate: bool,
}

/// Exact weights: the interval partition normalized by its total length.
pub fn weights_exact(curve: &ErrorCurve) -> WeightSpectrum {
    let partition = interval_partition_exact(curve);
    let total: f64 = partition.measures().iter().sum();
    if total <= 0.0 {
        return WeightSpectrum::degenerate(curve.values().len(), WeightMethod::Exact);
    }
    WeightSpectrum {
        weights: partition.measures().iter().map(|m| m / total).collect(),
        lambda_max: partition.lambda_max(),
        method: WeightMethod::Exact,
        degenerate: false,
    }
}

/// Grid weights: classify the midpoint of each of `samples` equal
/// subintervals of [0, lambda_max]. Deterministic; each weight is off by
/// at most (number of breakpoints)/samples from the exact one.
pub fn weights_grid(curve: &ErrorCurve, samples: u64) -> Result<WeightSpectrum, SicError> {
    if samples == 0 {
        return Err(SicError::ZeroSamples);
    }
    let method = WeightMethod::Grid { samples };
    let lambda_max = curve.lambda_max();
    if lambda_max <= 0.0 {
        return Ok(WeightSpectrum::degenerate(curve.values().len(), method));
    }
    let values = curve.values();
    let mut counts = vec![0u64; values.len()];
    for j in 0..samples {
        let lambda = lambda_max * ((j as f64 + 0.5) / samples as f64);
        counts[argmin_cost_values(values, lambda)] += 1;
    }
    Ok(WeightSpectrum::from_counts(counts, samples, lambda_max, method))
}

/// Monte Carlo weights: `samples` draws of lambda ~ U([0, lambda_max]),
/// each minimized independently. Weights are multiples of 1/samples, so
/// weights below 1/samples can be missed entirely.
pub fn weights_mc(curve: &ErrorCurve, samples: u64, seed: u64) -> Result<WeightSpectrum, SicError> {
    weights_mc_partitioned(curve, samples, seed, DEFAULT_PARTITIONS)
}

/// Monte Carlo weights with an explicit worker-partition count. Each
/// partition draws from its own ChaCha substream of the master seed and
/// the counts merge by addition, so the spectrum is bit-reproducible from
/// (seed, samples, partitions) under any execution schedule.
pub fn weights_mc_partitioned(
    curve: &ErrorCurve,
    samples: u64,
    seed: u64,
    partitions: u32,
) -> Result<WeightSpectrum, SicError> {
    if samples == 0 {
        return Err(SicError::ZeroSamples);
    }
    if partitions == 0 {
        return Err(SicError::ZeroPartitions);
    }
    let method = WeightMethod::Mc { samples, seed };
    let lambda_max = curve.lambda_max();
    if lambda_max <= 0.0 {
        return Ok(WeightSpectrum::degenerate(curve.values().len(), method));
    }
    let values = curve.values();
    let mut counts = vec![0u64; values.len()];
    let base = samples / u64::from(partitions);
    let remainder = samples % u64::from(partitions);
    for partition in 0..u64::from(partitions) {
        let draws = base + u64::from(partition < remainder);
        if draws == 0 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(partition);
        for _ in 0..draws {
            let lambda = lambda_max * rng.random::<f64>();
            counts[argmin_cost_values(values, lambda)] += 1;
        }
    }
    Ok(WeightSpectrum::from_counts(counts, samples, lambda_max, method))
}

impl WeightSpectrum {
    fn degenerate(len: usize, method: WeightMethod) -> Self {
        Self {
            weights: vec![0.0; len],
            lambda_max: 0.0,
            method,
            degenerate: true,
        }
    }

    fn from_counts(counts: Vec<u64>, samples: u64, lambda_max: f64, method: WeightMethod) -> Self {
        Self {
            weights: counts
                .into_iter()
                .map(|c| c as f64 / samples as f64)
                .collect(),
            lambda_max,
            method,
            degenerate: false,
        }
    }

    /// w_0..=w_K.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// K, the largest model dimension.
    pub fn max_index(&self) -> usize {
        self.weights.len() - 1
    }

    /// Length of the scanned penalty range (zero for degenerate curves).
    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn method(&self) -> WeightMethod {
        self.method
    }

    /// True when the curve never rewards leaving the empty model
    /// (lambda_max = 0); all weights are zero and every level selects 0.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Cumulative weights W_1..=W_K. Non-decreasing; W_K = 1 up to
    /// rounding for valid spectra, all zeros for degenerate ones.
    pub fn cumulative(&self) -> Vec<f64> {
        let mut running = 0.0;
        self.weights
            .iter()
            .skip(1)
            .map(|w| {
                running += w;
                running
            })
            .collect()
    }

    /// The elbow candidates: dimensions with positive weight, ascending.
    /// For the sampled engines "positive" means at least one hit.
    pub fn elbow_set(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|&(_, &w)| w > 0.0)
            .map(|(k, _)| k)
            .collect()
    }

    /// The smallest dimension whose cumulative weight reaches `level`.
    /// Degenerate spectra select 0. If rounding leaves W_K a hair under
    /// the level, falls back to K.
    pub fn select(&self, level: f64) -> Result<usize, SicError> {
        if !(level > 0.0 && level <= 1.0) {
            return Err(SicError::InvalidLevel { level });
        }
        if self.degenerate {
            return Ok(0);
        }
        let mut running = 0.0;
        for (k, &w) in self.weights.iter().enumerate().skip(1) {
            running += w;
            if running >= level {
                return Ok(k);
            }
        }
        Ok(self.max_index())
    }
}
