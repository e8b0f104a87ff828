use std::fs;
use std::path::{Path, PathBuf};

use arena_core::aes::{MatchConfig, ScoreWeights};
use arena_core::football::HORIZON;
use arena_core::harness::{PlannerConfig, PlannerMode};
use arena_core::metrics::RunSpec;
use arena_core::sokoban::MAX_SOLUTION_STEPS;
use serde::{Deserialize, Serialize};

use crate::cli::{EnvKind, ModeArg, RunOptions};
use crate::error::{config, Result};

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub env: Option<String>,
    pub agent: Option<String>,
    pub corpus: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub mode: Option<PlannerMode>,
    pub repeats: Option<usize>,
    pub seed: Option<u64>,
    pub seeds: Option<Vec<u64>>,
    pub filter: Option<String>,
    pub action_memory: Option<usize>,
    pub observation_memory: Option<usize>,
    pub max_parse_retries: Option<usize>,
    pub max_steps: Option<usize>,
    pub auto_render: Option<bool>,
    pub snapshots: Option<PathBuf>,
    pub weights: Option<PathBuf>,
    pub workers: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved run settings, written next to the results.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub agent: String,
    pub corpus: PathBuf,
    pub out: PathBuf,
    pub spec: RunSpec,
    pub planner: PlannerConfig,
    pub auto_render: bool,
    pub snapshots: Option<PathBuf>,
    pub weights_source: String,
    pub weights: ScoreWeights,
    pub match_config: MatchConfig,
    pub workers: usize,
}

impl RunConfig {
    pub fn env(&self) -> EnvKind {
        match self.spec.env.as_str() {
            "football" => EnvKind::Football,
            "webui" => EnvKind::Webui,
            _ => EnvKind::Sokoban,
        }
    }
}

fn parse_env(name: &str) -> Result<EnvKind> {
    match name {
        "sokoban" => Ok(EnvKind::Sokoban),
        "football" => Ok(EnvKind::Football),
        "webui" => Ok(EnvKind::Webui),
        other => Err(config(format!("unknown environment {other:?}"))),
    }
}

/// Loads score weights from JSON, or the defaults when `path` is `None`.
pub fn load_weights(path: Option<&Path>) -> Result<(ScoreWeights, String)> {
    let Some(path) = path else {
        return Ok((ScoreWeights::default(), "default".into()));
    };
    let text = fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
    let w: ScoreWeights = serde_json::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))?;
    w.validate().map_err(config)?;
    Ok((w, path.display().to_string()))
}

/// Flags win over the config file, which wins over defaults.
pub fn resolve(opts: &RunOptions, agent: Option<&str>, default_agent: &str) -> Result<RunConfig> {
    let file = match &opts.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let env = match (opts.env, &file.env) {
        (Some(e), _) => e,
        (None, Some(name)) => parse_env(name)?,
        (None, None) => return Err(config("no environment given (--env)")),
    };
    let corpus = opts.corpus.clone().or(file.corpus).ok_or_else(|| config("no corpus given (--corpus)"))?;
    let out = opts.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("arena-out"));
    let default_mode = if env == EnvKind::Webui { PlannerMode::Global } else { PlannerMode::Online };
    let mode = match opts.mode {
        Some(ModeArg::Global) => PlannerMode::Global,
        Some(ModeArg::Online) => PlannerMode::Online,
        None => file.mode.unwrap_or(default_mode),
    };
    if env == EnvKind::Football && mode == PlannerMode::Global {
        return Err(config("football only supports the online planner"));
    }
    if env == EnvKind::Webui && mode == PlannerMode::Online {
        return Err(config("webui only supports the global planner"));
    }
    let mut spec = RunSpec::standard(env.name(), mode);
    if let Some(r) = opts.repeats.or(file.repeats) {
        spec.repeats = r;
    }
    spec.base_seed = opts.seed.or(file.seed).unwrap_or(0);
    if opts.seed.is_none() {
        spec.seeds = file.seeds.unwrap_or_default();
    }
    spec.filter = opts.filter.clone().or(file.filter);
    spec.validate().map_err(config)?;

    let steps = if env == EnvKind::Football { HORIZON } else { MAX_SOLUTION_STEPS };
    let mut planner = PlannerConfig::standard(mode, steps);
    if let Some(v) = opts.action_memory.or(file.action_memory) {
        planner.action_memory = v;
    }
    if let Some(v) = opts.observation_memory.or(file.observation_memory) {
        planner.observation_memory = v;
    }
    if let Some(v) = opts.max_parse_retries.or(file.max_parse_retries) {
        planner.max_parse_retries = v;
    }
    if let Some(v) = opts.max_steps.or(file.max_steps) {
        planner.max_steps = v;
    }
    planner.validate().map_err(config)?;

    let weights_path = opts.weights.clone().or(file.weights);
    let (weights, weights_source) = load_weights(weights_path.as_deref())?;
    Ok(RunConfig {
        agent: agent.map(str::to_string).or(file.agent).unwrap_or_else(|| default_agent.to_string()),
        corpus,
        out,
        spec,
        planner,
        auto_render: !opts.no_auto_render && file.auto_render.unwrap_or(true),
        snapshots: opts.snapshots.clone().or(file.snapshots),
        weights_source,
        weights,
        match_config: MatchConfig::default(),
        workers: opts.workers.or(file.workers).unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("arena-cfg-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        fs::write(&path, "env = \"sokoban\"\ncorpus = \"levels\"\nrepeats = 5\naction_memory = 10\nobservation_memory = 2\n").unwrap();
        let opts = RunOptions { config: Some(path), repeats: Some(2), ..Default::default() };
        let cfg = resolve(&opts, None, "idle").unwrap();
        assert_eq!(cfg.spec.repeats, 2);
        assert_eq!((cfg.planner.action_memory, cfg.planner.observation_memory), (10, 2));
        assert_eq!(cfg.agent, "idle");
        assert_eq!(cfg.weights_source, "default");
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn rejects_bad_combinations() {
        let opts = RunOptions { env: Some(EnvKind::Football), corpus: Some("c".into()), mode: Some(ModeArg::Global), ..Default::default() };
        assert!(resolve(&opts, None, "idle").is_err());
        let opts = RunOptions { env: Some(EnvKind::Sokoban), corpus: Some("c".into()), observation_memory: Some(9), ..Default::default() };
        assert!(resolve(&opts, None, "idle").is_err());
    }
}
