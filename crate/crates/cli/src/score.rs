use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

use arena_core::aes::{aes, AesReport, MatchConfig, ScoreWeights};
use arena_core::harness::{EpisodeResult, PlannerMode};
use arena_core::metrics::{aggregate, Report, RunSpec};
use arena_core::webui::load_generation;
use serde::Serialize;

use crate::cli::{ReportArgs, ScoreWebArgs};
use crate::config::load_weights;
use crate::corpus::load_webui;
use crate::error::{config, corpus, Result};

#[derive(Debug, Serialize)]
pub struct TaskScore {
    pub task: String,
    pub report: AesReport,
}

#[derive(Debug, Serialize)]
pub struct WebScore {
    pub weights_source: String,
    pub weights: ScoreWeights,
    pub match_config: MatchConfig,
    /// Mean AES over tasks, in percent.
    pub mean: f64,
    pub tasks: Vec<TaskScore>,
}

/// Scores `<gen>/<task>/` against `<gt>/<task>/` for every ground-truth
/// task. A task with no generated directory counts as unparsed.
pub fn score_web(gt: &Path, gen: &Path, weights: Option<&Path>) -> Result<WebScore> {
    let (weights, weights_source) = load_weights(weights)?;
    let cfg = MatchConfig::default();
    let tasks = load_webui(gt)?;
    let mut out = Vec::with_capacity(tasks.len());
    for task in &tasks {
        let generation = load_generation(&gen.join(&task.id)).map_err(corpus)?;
        let report = aes(&generation, &task.gt, &cfg, &weights).map_err(corpus)?;
        out.push(TaskScore { task: task.id.clone(), report });
    }
    let mean = out.iter().map(|t| t.report.aes).sum::<f64>() / out.len() as f64;
    Ok(WebScore { weights_source, weights, match_config: cfg, mean, tasks: out })
}

pub fn cmd_score_web(args: &ScoreWebArgs) -> Result<String> {
    let score = score_web(&args.gt, &args.gen, args.weights.as_deref())?;
    let text = serde_json::to_string_pretty(&score).expect("scores serialise");
    emit(args.out.as_deref(), text)
}

fn emit(out: Option<&Path>, text: String) -> Result<String> {
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| config(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

pub fn read_episodes(path: &Path) -> Result<Vec<EpisodeResult>> {
    let file = fs::File::open(path).map_err(|e| corpus(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| corpus(format!("{}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| corpus(format!("{}:{}: {e}", path.display(), i + 1)))?);
    }
    Ok(out)
}

/// Aggregates each labelled episode set per environment and mode. The
/// repeat count of a group is its largest repeat index plus one.
pub fn build_report(sets: Vec<(String, Vec<EpisodeResult>)>) -> Result<Report> {
    let mut runs = Vec::new();
    for (label, episodes) in sets {
        let mut groups: BTreeMap<(String, String), (PlannerMode, Vec<EpisodeResult>)> = BTreeMap::new();
        for e in episodes {
            groups.entry((e.env.clone(), e.mode.to_string())).or_insert_with(|| (e.mode, Vec::new())).1.push(e);
        }
        for ((env, _), (mode, results)) in groups {
            let mut spec = RunSpec::standard(&env, mode);
            spec.repeats = results.iter().map(|r| r.repeat + 1).max().unwrap_or(1);
            let mut agg = aggregate(&results, &spec).map_err(|e| corpus(format!("{label}: {e}")))?;
            agg.label = label.clone();
            runs.push(agg);
        }
    }
    Ok(Report::new(runs))
}

/// Run label for an episode file: its directory name, or the file stem for
/// files not called `episodes.jsonl`.
fn label_for(path: &Path) -> String {
    let name = |p: Option<&std::ffi::OsStr>| p.map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if path.file_name().is_some_and(|n| n == crate::run::EPISODES_FILE) {
        name(path.parent().and_then(Path::file_name))
    } else {
        name(path.file_stem())
    }
}

pub fn cmd_report(args: &ReportArgs) -> Result<String> {
    let mut sets = Vec::new();
    for p in &args.episodes {
        sets.push((label_for(p), read_episodes(p)?));
    }
    let report = build_report(sets)?;
    let text = if args.json { report.to_json() } else { report.to_markdown() };
    emit(args.out.as_deref(), text)
}
