use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use arena_core::football::{self, FootballRunConfig, FootballState};
use arena_core::harness::{self, Agent, EpisodeResult, HarnessError};
use arena_core::metrics::{aggregate, Report};
use arena_core::par::Exec;
use arena_core::sokoban::{SokobanEnv, SokobanState};
use arena_core::webui::{self, GeneratedCode, Renderer, SnapshotDirRenderer, WebError, WebTask};
use arena_core::aes::Generation;

use crate::agents::{builtin, external, AgentSpec};
use crate::config::RunConfig;
use crate::corpus;
use crate::error::{config, CliError, Result};
use crate::panel::Panel;

pub const EPISODES_FILE: &str = "episodes.jsonl";

/// Plays one level for one repeat.
type Play<'a, S> = dyn Fn(usize, usize, &mut dyn Agent<S>) -> Result<EpisodeResult> + Sync + 'a;

fn harness_err(e: HarnessError) -> CliError {
    match e {
        HarnessError::Config(c) => config(c),
        HarnessError::Agent(a) => CliError::Agent(a.to_string()),
    }
}

fn web_err(e: WebError) -> CliError {
    match e {
        WebError::Agent(a) => CliError::Agent(a.to_string()),
        WebError::Aes(a) => CliError::Corpus(a.to_string()),
        other => config(other),
    }
}

/// Used when no snapshot directory was given: any generated code is an
/// error since it cannot be graded.
struct NoRenderer;

impl Renderer for NoRenderer {
    fn render(&mut self, task: &WebTask, _code: &GeneratedCode) -> std::result::Result<Generation, WebError> {
        Err(WebError::Snapshot {
            path: task.id.clone().into(),
            message: "generated code needs rendering; capture snapshots with the browser toolkit and pass --snapshots".into(),
        })
    }
}

struct Output {
    episodes: BufWriter<File>,
    results: Vec<EpisodeResult>,
}

impl Output {
    fn create(dir: &Path, cfg: &RunConfig) -> Result<Output> {
        fs::create_dir_all(dir).map_err(|e| config(format!("cannot create {}: {e}", dir.display())))?;
        let run = serde_json::to_string_pretty(cfg).expect("config serialises");
        fs::write(dir.join("run.json"), run).map_err(|e| config(format!("{}: {e}", dir.display())))?;
        let path = dir.join(EPISODES_FILE);
        let file = File::create(&path).map_err(|e| config(format!("{}: {e}", path.display())))?;
        Ok(Output { episodes: BufWriter::new(file), results: Vec::new() })
    }

    fn push(&mut self, r: EpisodeResult) -> Result<()> {
        let line = serde_json::to_string(&r).expect("episodes serialise");
        writeln!(self.episodes, "{line}").and_then(|_| self.episodes.flush()).map_err(|e| config(format!("writing episodes: {e}")))?;
        self.results.push(r);
        Ok(())
    }
}

/// Seed for (level, repeat), independent of execution order.
fn episode_seed(base: u64, level: usize) -> u64 {
    base.wrapping_mul(0x2545_F491_4F6C_DD1D).wrapping_add(level as u64)
}

fn drive<S: 'static>(cfg: &RunConfig, spec: &AgentSpec, levels: usize, play: &Play<'_, S>, out: &mut Output, panel: Option<&Panel>) -> Result<()> {
    let jobs: Vec<(usize, usize)> = (0..levels).flat_map(|l| (0..cfg.spec.repeats).map(move |r| (l, r))).collect();
    let tag = |mut e: EpisodeResult, (l, r): (usize, usize)| {
        e.repeat = r;
        e.seed = episode_seed(cfg.spec.seed(r), l);
        e
    };
    if spec.is_builtin() {
        let results = Exec::with_workers(cfg.workers, || {
            Exec::Parallel.map(&jobs, |&(l, r)| {
                let mut agent = builtin::<S>(spec, episode_seed(cfg.spec.seed(r), l));
                play(l, r, agent.as_mut()).map(|e| tag(e, (l, r)))
            })
        });
        for r in results {
            out.push(r?)?;
        }
        return Ok(());
    }
    let mut agent: Box<dyn Agent<S>> = match panel {
        Some(p) => Box::new(p.agent()),
        None => external(spec)?,
    };
    for &job in &jobs {
        let e = play(job.0, job.1, agent.as_mut())?;
        out.push(tag(e, job))?;
    }
    Ok(())
}

fn finish(cfg: &RunConfig, out: &Output) -> Result<()> {
    if out.results.is_empty() {
        return Ok(());
    }
    let agg = aggregate(&out.results, &cfg.spec).map_err(config)?;
    let report = Report::new(vec![agg]);
    let write = |name: &str, text: String| fs::write(cfg.out.join(name), text).map_err(|e| config(format!("{name}: {e}")));
    write("aggregate.json", report.to_json())?;
    write("report.md", report.to_markdown())
}

/// Runs every selected level `repeats` times and writes
/// `episodes.jsonl` (flushed per episode), `aggregate.json`, `report.md`
/// and the resolved `run.json`. On an agent failure the episodes played so
/// far are kept and aggregated.
pub fn run(cfg: &RunConfig, panel: Option<&Panel>) -> Result<Vec<EpisodeResult>> {
    let spec: AgentSpec = cfg.agent.parse()?;
    if spec == AgentSpec::Interactive && panel.is_none() {
        return Err(config("the interactive agent needs the panel endpoint"));
    }
    let mut out = Output::create(&cfg.out, cfg)?;
    let outcome = match cfg.env() {
        crate::cli::EnvKind::Sokoban => {
            let levels: Vec<_> = corpus::load_sokoban(&cfg.corpus)?.into_iter().filter(|(id, _)| cfg.spec.selects(id)).collect();
            let play = |i: usize, _: usize, agent: &mut dyn Agent<SokobanState>| {
                let (id, level) = &levels[i];
                let mut env = SokobanEnv::new(id.clone(), level.clone());
                harness::run_episode(agent, &mut env, &cfg.planner).map_err(harness_err)
            };
            drive(cfg, &spec, levels.len(), &play, &mut out, panel)
        }
        crate::cli::EnvKind::Football => {
            let scenarios: Vec<_> = corpus::load_football(&cfg.corpus)?.into_iter().filter(|s| cfg.spec.selects(&s.id)).collect();
            let fcfg = FootballRunConfig {
                planner: cfg.planner,
                auto_render: if cfg.auto_render { FootballRunConfig::default().auto_render } else { None },
                ..FootballRunConfig::default()
            };
            let play = |i: usize, _: usize, agent: &mut dyn Agent<FootballState>| football::run_episode(&scenarios[i], agent, &fcfg).map_err(harness_err);
            drive(cfg, &spec, scenarios.len(), &play, &mut out, panel)
        }
        crate::cli::EnvKind::Webui => {
            let tasks: Vec<_> = corpus::load_webui(&cfg.corpus)?.into_iter().filter(|t| cfg.spec.selects(&t.id)).collect();
            let code_dir = cfg.out.join("code");
            let play = |i: usize, repeat: usize, agent: &mut dyn Agent<WebTask>| {
                let task = &tasks[i];
                let ep = match &cfg.snapshots {
                    Some(root) => webui::run_task(agent, task, &mut SnapshotDirRenderer { root: root.clone() }, cfg.planner.max_parse_retries, &cfg.match_config, &cfg.weights),
                    None => webui::run_task(agent, task, &mut NoRenderer, cfg.planner.max_parse_retries, &cfg.match_config, &cfg.weights),
                }
                .map_err(web_err)?;
                if let Some(code) = &ep.code {
                    code.write_to(&code_dir.join(&task.id).join(format!("r{repeat}"))).map_err(config)?;
                }
                Ok(ep.result)
            };
            drive(cfg, &spec, tasks.len(), &play, &mut out, panel)
        }
    };
    if let Some(p) = panel {
        p.finish();
    }
    finish(cfg, &out)?;
    outcome.map(|_| out.results)
}
