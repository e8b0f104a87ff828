use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::best_of_n::{best_of_n_curve, Estimator};
use super::{MetricsError, RunSpec};
use crate::aes::ErrorBuckets;
use crate::harness::{EpisodeResult, ErrorKind, PlannerMode};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub level_id: String,
    /// Scores by repeat index; `None` where the repeat is missing.
    pub scores: Vec<Option<f64>>,
    pub mean: f64,
    pub std: f64,
}

/// Instruction-following error counts over all episodes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ErrorTally {
    pub episodes: usize,
    pub invalid_actions: usize,
    pub repeating_actions: usize,
    /// Episodes with either error.
    pub ife: usize,
}

impl ErrorTally {
    pub fn add(&mut self, kind: ErrorKind) {
        self.episodes += 1;
        let (ia, ra) = match kind {
            ErrorKind::None => (false, false),
            ErrorKind::InvalidActions => (true, false),
            ErrorKind::RepeatingActions => (false, true),
            ErrorKind::Ife => (true, true),
        };
        self.invalid_actions += usize::from(ia);
        self.repeating_actions += usize::from(ra);
        self.ife += usize::from(ia || ra);
    }

    fn pct(&self, n: usize) -> f64 {
        if self.episodes == 0 {
            0.0
        } else {
            100.0 * n as f64 / self.episodes as f64
        }
    }

    pub fn ife_pct(&self) -> f64 {
        self.pct(self.ife)
    }

    pub fn invalid_pct(&self) -> f64 {
        self.pct(self.invalid_actions)
    }

    pub fn repeating_pct(&self) -> f64 {
        self.pct(self.repeating_actions)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    /// Free-form run name, e.g. the agent.
    #[serde(default)]
    pub label: String,
    pub env: String,
    pub mode: PlannerMode,
    pub repeats: usize,
    pub levels: Vec<LevelSummary>,
    /// Mean of the per-level means.
    pub mean: f64,
    /// Grand mean of each repeat on its own.
    pub repeat_means: Vec<f64>,
    /// Sample standard deviation of `repeat_means`.
    pub std: f64,
    pub stderr: f64,
    /// Significance band, `2 · stderr`.
    pub delta: f64,
    /// Levels lacking at least one repeat.
    pub incomplete: Vec<String>,
    pub errors: ErrorTally,
    /// Mean AES loss per bucket, for WebUI runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aes_buckets: Option<ErrorBuckets>,
    /// Exact best-of-N over complete levels.
    pub best_of_n: Vec<(usize, f64)>,
}

impl AggregateReport {
    pub fn is_complete(&self) -> bool {
        self.incomplete.is_empty()
    }
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Sample standard deviation; 0 for fewer than two values.
pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Aggregates episodes of one run: per-level means first, then the grand
/// mean over levels. Input order does not matter; episodes are keyed by
/// `(level_id, repeat)`.
pub fn aggregate(results: &[EpisodeResult], spec: &RunSpec) -> Result<AggregateReport, MetricsError> {
    spec.validate()?;
    if results.is_empty() {
        return Err(MetricsError::NoSamples);
    }
    let mut by_level: BTreeMap<&str, Vec<Option<&EpisodeResult>>> = BTreeMap::new();
    for r in results {
        if r.repeat >= spec.repeats {
            return Err(MetricsError::RepeatOutOfRange { level: r.level_id.clone(), repeat: r.repeat, repeats: spec.repeats });
        }
        let slots = by_level.entry(&r.level_id).or_insert_with(|| vec![None; spec.repeats]);
        if slots[r.repeat].is_some() {
            return Err(MetricsError::Duplicate { level: r.level_id.clone(), repeat: r.repeat });
        }
        slots[r.repeat] = Some(r);
    }

    let mut levels = Vec::with_capacity(by_level.len());
    let mut incomplete = Vec::new();
    let mut errors = ErrorTally::default();
    let mut buckets: Option<(ErrorBuckets, usize)> = None;
    for (level, slots) in &by_level {
        let scores: Vec<Option<f64>> = slots.iter().map(|s| s.map(|r| r.score)).collect();
        let present: Vec<f64> = scores.iter().flatten().copied().collect();
        if present.len() < spec.repeats {
            incomplete.push(level.to_string());
        }
        for r in slots.iter().flatten() {
            errors.add(r.classification.kind);
            if let Some(b) = &r.aes_buckets {
                let (acc, n) = buckets.get_or_insert((ErrorBuckets::default(), 0));
                acc.parse += b.parse;
                acc.render += b.render;
                acc.interaction += b.interaction;
                acc.matching += b.matching;
                acc.attribute += b.attribute;
                *n += 1;
            }
        }
        levels.push(LevelSummary { level_id: level.to_string(), mean: mean(&present), std: sample_std(&present), scores });
    }

    let level_means: Vec<f64> = levels.iter().map(|l| l.mean).collect();
    let repeat_means: Vec<f64> = (0..spec.repeats)
        .map(|k| mean(&levels.iter().filter_map(|l| l.scores[k]).collect::<Vec<_>>()))
        .collect();
    let std = sample_std(&repeat_means);
    let stderr = std / (spec.repeats as f64).sqrt();
    let complete: Vec<Vec<f64>> = levels.iter().filter(|l| l.scores.iter().all(Option::is_some)).map(|l| l.scores.iter().flatten().copied().collect()).collect();
    let best = if complete.is_empty() { Vec::new() } else { best_of_n_curve(&complete, Estimator::Exact, Exec::Sequential)? };
    let aes_buckets = buckets.map(|(b, n)| {
        let n = n as f64;
        ErrorBuckets { parse: b.parse / n, render: b.render / n, interaction: b.interaction / n, matching: b.matching / n, attribute: b.attribute / n }
    });
    Ok(AggregateReport {
        label: String::new(),
        env: spec.env.clone(),
        mode: spec.mode,
        repeats: spec.repeats,
        mean: mean(&level_means),
        levels,
        repeat_means,
        std,
        stderr,
        delta: 2.0 * stderr,
        incomplete,
        errors,
        aes_buckets,
        best_of_n: best,
    })
}
