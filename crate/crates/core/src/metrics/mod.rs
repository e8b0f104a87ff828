//! Repeated runs: aggregation, best-of-N and report emission.

mod aggregate;
mod best_of_n;
mod report;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::harness::PlannerMode;

pub use aggregate::{aggregate, sample_std, AggregateReport, ErrorTally, LevelSummary};
pub use best_of_n::{best_of_n, best_of_n_curve, expected_max, Estimator};
pub use report::{markdown_report, Report};

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("repeats must be at least 1")]
    NoRepeats,
    #[error("{seeds} seeds given for {repeats} repeats")]
    SeedCount { seeds: usize, repeats: usize },
    #[error("no samples")]
    NoSamples,
    #[error("best-of-N needs N ≥ 1")]
    ZeroN,
    #[error("Monte Carlo estimate needs at least one draw")]
    NoDraws,
    #[error("best-of-{n} requested but a level has only {available} samples")]
    TooFewSamples { n: usize, available: usize },
    #[error("level {level:?} repeat {repeat} is outside 0..{repeats}")]
    RepeatOutOfRange { level: String, repeat: usize, repeats: usize },
    #[error("level {level:?} repeat {repeat} appears twice")]
    Duplicate { level: String, repeat: usize },
}

/// What to run and how often.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub env: String,
    pub mode: PlannerMode,
    pub repeats: usize,
    /// One seed per repeat. Empty means `base_seed + repeat`.
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub base_seed: u64,
    /// Only levels whose id contains this string.
    #[serde(default)]
    pub filter: Option<String>,
}

impl RunSpec {
    /// Standard repeat counts: 10 for football, 3 otherwise.
    pub fn standard(env: &str, mode: PlannerMode) -> Self {
        let repeats = if env == "football" { 10 } else { 3 };
        RunSpec { env: env.to_string(), mode, repeats, seeds: Vec::new(), base_seed: 0, filter: None }
    }

    pub fn validate(&self) -> Result<(), MetricsError> {
        if self.repeats == 0 {
            return Err(MetricsError::NoRepeats);
        }
        if !self.seeds.is_empty() && self.seeds.len() != self.repeats {
            return Err(MetricsError::SeedCount { seeds: self.seeds.len(), repeats: self.repeats });
        }
        Ok(())
    }

    pub fn seed(&self, repeat: usize) -> u64 {
        self.seeds.get(repeat).copied().unwrap_or_else(|| self.base_seed.wrapping_add(repeat as u64))
    }

    pub fn selects(&self, level_id: &str) -> bool {
        self.filter.as_deref().is_none_or(|f| level_id.contains(f))
    }
}
