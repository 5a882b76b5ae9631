use serde::Serialize;

use crate::{Criterion, SicError, WeightSpectrum};

/// One confidence-level selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelSelection {
    pub level: f64,
    pub k: usize,
}

/// One classical-criterion selection: the slope it fixes and the
/// dimension that slope picks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaselinePick {
    pub criterion: Criterion,
    pub lambda: f64,
    pub k: usize,
}

/// Everything the selection stage derives from one weight spectrum.
/// Baselines start empty: they need the raw curve (AED) and the
/// observation count (BIC/HQIC), so the caller pushes whichever are
/// computable in its context.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub lambda_max: f64,
    pub degenerate: bool,
    pub elbow_set: Vec<usize>,
    pub cumulative: Vec<f64>,
    pub selections: Vec<LevelSelection>,
    pub baselines: Vec<BaselinePick>,
}

impl SelectionReport {
    pub fn from_spectrum(spectrum: &WeightSpectrum, levels: &[f64]) -> Result<Self, SicError> {
        let mut selections = Vec::with_capacity(levels.len());
        for &level in levels {
            selections.push(LevelSelection {
                level,
                k: spectrum.select(level)?,
            });
        }
        Ok(Self {
            lambda_max: spectrum.lambda_max(),
            degenerate: spectrum.is_degenerate(),
            elbow_set: spectrum.elbow_set(),
            cumulative: spectrum.cumulative(),
            selections,
            baselines: Vec::new(),
        })
    }
}
