use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_BIND: &str = "127.0.0.1:8765";

#[derive(Debug, Parser)]
#[command(name = "arena", version, about = "Generate corpora, run agents and score results")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a level or scenario corpus plus its manifest.
    Generate(GenerateArgs),
    /// Run an agent over a corpus and write episodes and an aggregate.
    Run(RunArgs),
    /// Score generated page snapshots against ground truth.
    ScoreWeb(ScoreWebArgs),
    /// Aggregate episode files into a report.
    Report(ReportArgs),
    /// Serve observations to the human-play panel (interactive run).
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnvKind {
    Sokoban,
    Football,
    Webui,
}

impl EnvKind {
    pub fn name(self) -> &'static str {
        match self {
            EnvKind::Sokoban => "sokoban",
            EnvKind::Football => "football",
            EnvKind::Webui => "webui",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Global,
    Online,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub env: EnvKind,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (1 runs sequentially).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

/// Options shared by `run` and `serve`. Unset options fall back to the
/// config file, then to built-in defaults.
#[derive(Debug, Args, Default)]
pub struct RunOptions {
    #[arg(long, value_enum)]
    pub env: Option<EnvKind>,
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub repeats: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Only levels whose id contains this string.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long)]
    pub action_memory: Option<usize>,
    #[arg(long)]
    pub observation_memory: Option<usize>,
    #[arg(long)]
    pub max_parse_retries: Option<usize>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Football: disable frame skipping.
    #[arg(long)]
    pub no_auto_render: bool,
    /// WebUI: directory of pre-rendered snapshots, `<dir>/<task>/<action>.json`.
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
    /// WebUI: JSON score weights.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// TOML file with defaults for any of these options.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// idle, random, interactive, `wire:<command>` or `wire:http://host:port/path`.
    #[arg(long)]
    pub agent: Option<String>,
    #[arg(long, env = "ARENA_BIND", default_value = DEFAULT_BIND)]
    pub bind: String,
    #[command(flatten)]
    pub opts: RunOptions,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "ARENA_BIND", default_value = DEFAULT_BIND)]
    pub bind: String,
    #[command(flatten)]
    pub opts: RunOptions,
}

#[derive(Debug, Args)]
pub struct ScoreWebArgs {
    /// Ground-truth corpus: `<dir>/<task>/{task.txt, <action>.json}`.
    #[arg(long)]
    pub gt: PathBuf,
    /// Generated snapshots: `<dir>/<task>/<action>.json`.
    #[arg(long)]
    pub gen: PathBuf,
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Episode files (JSON lines) written by `run`.
    #[arg(required = true)]
    pub episodes: Vec<PathBuf>,
    /// Emit JSON instead of markdown.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
