//! WebUI reproduction tasks.
//!
//! The agent receives a task description and answers once with fenced
//! `html`/`css`/`javascript` blocks. Rendering that code and capturing page
//! snapshots happens outside this crate (see the browser toolkit); a
//! [`Renderer`] turns code into a [`Generation`] which is then graded with
//! [`aes`].
//!
//! On disk a task directory holds `task.txt` plus one snapshot per action
//! page, `<action_id>.json`, with `initial.json` being the page as first
//! loaded. Generated snapshots use the same layout.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aes::{aes, AesError, AesReport, Generation, MatchConfig, PageSnapshot, ScoreWeights, INITIAL_ACTION};
use crate::harness::{
    classify_errors, global_context, parse_code_blocks, Agent, AgentError, DecisionRequest, EpisodeInfo, EpisodeResult, Observation,
    OutputRecord, PlannerMode, PromptSet, Role, Termination, Transcript, Turn,
};

pub const TASK_FILE: &str = "task.txt";

/// Stand-in vocabulary: WebUI replies are code, not action tokens.
pub const WEBUI_VOCABULARY: &[&str] = &["html", "css", "javascript"];

#[derive(Debug, Error)]
pub enum WebError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Snapshot { path: PathBuf, message: String },
    #[error("{0}: no {INITIAL_ACTION}.json ground-truth page")]
    NoInitial(PathBuf),
    #[error(transparent)]
    Aes(#[from] AesError),
    #[error(transparent)]
    Agent(#[from] AgentError),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> WebError + '_ {
    move |source| WebError::Io { path: path.to_path_buf(), source }
}

/// One page to reproduce: its description and ground-truth snapshots, the
/// initial page first.
#[derive(Debug, Clone, PartialEq)]
pub struct WebTask {
    pub id: String,
    pub description: String,
    pub gt: Vec<PageSnapshot>,
}

impl WebTask {
    pub fn prompts(&self) -> PromptSet {
        PromptSet::webui(self.description.trim())
    }

    /// Reads a task directory. Ground-truth snapshots must all parse.
    pub fn load(dir: &Path) -> Result<WebTask, WebError> {
        let id = dir.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let task_path = dir.join(TASK_FILE);
        let description = fs::read_to_string(&task_path).map_err(io_err(&task_path))?;
        let (gt, bad) = read_pages(dir)?;
        if let Some((path, message)) = bad.into_iter().next() {
            return Err(WebError::Snapshot { path, message });
        }
        if gt.first().is_none_or(|p| p.action_id != INITIAL_ACTION) {
            return Err(WebError::NoInitial(dir.to_path_buf()));
        }
        Ok(WebTask { id, description, gt })
    }

    /// Loads every task directory under `root`, sorted by name.
    pub fn load_corpus(root: &Path) -> Result<Vec<WebTask>, WebError> {
        let mut dirs = Vec::new();
        for entry in fs::read_dir(root).map_err(io_err(root))? {
            let path = entry.map_err(io_err(root))?.path();
            if path.join(TASK_FILE).is_file() {
                dirs.push(path);
            }
        }
        dirs.sort();
        dirs.iter().map(|d| WebTask::load(d)).collect()
    }
}

/// Snapshot files in `dir`, `initial` first and the rest by action id.
/// Files that fail to parse are returned separately with their error.
#[allow(clippy::type_complexity)]
fn read_pages(dir: &Path) -> Result<(Vec<PageSnapshot>, Vec<(PathBuf, String)>), WebError> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        if path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort_by_key(|p| {
        let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        (stem != INITIAL_ACTION, stem)
    });
    let mut pages = Vec::new();
    let mut bad = Vec::new();
    for path in files {
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        match PageSnapshot::from_json(&text) {
            Ok(page) => pages.push(page),
            Err(e) => bad.push((path, e.to_string())),
        }
    }
    Ok((pages, bad))
}

/// Reads generated snapshots for one task. A missing directory means
/// nothing was produced; unreadable files are scored as parse failures.
pub fn load_generation(dir: &Path) -> Result<Generation, WebError> {
    if !dir.is_dir() {
        return Ok(Generation::Unparsed);
    }
    let (pages, bad) = read_pages(dir)?;
    let malformed = bad
        .into_iter()
        .map(|(path, _)| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default())
        .collect();
    Ok(Generation::Pages { pages, malformed })
}

/// Code extracted from an agent reply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedCode {
    pub html: String,
    pub css: Option<String>,
    pub javascript: Option<String>,
}

impl GeneratedCode {
    /// Writes `index.html`, `style.css` and `script.js` (the latter two when
    /// present) into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<(), WebError> {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let files = [("index.html", Some(&self.html)), ("style.css", self.css.as_ref()), ("script.js", self.javascript.as_ref())];
        for (name, body) in files {
            if let Some(body) = body {
                let path = dir.join(name);
                fs::write(&path, body).map_err(io_err(&path))?;
            }
        }
        Ok(())
    }
}

/// Pulls the html block (required) and css/javascript blocks out of a
/// reply.
pub fn extract_code(reply: &str) -> Option<GeneratedCode> {
    let blocks = parse_code_blocks(reply);
    let get = |lang: &str| blocks.iter().find(|(l, _)| l == lang).map(|(_, b)| b.clone());
    let html = get("html").filter(|h| !h.trim().is_empty())?;
    Some(GeneratedCode { html, css: get("css"), javascript: get("javascript") })
}

/// Produces page snapshots for generated code.
pub trait Renderer {
    fn render(&mut self, task: &WebTask, code: &GeneratedCode) -> Result<Generation, WebError>;
}

/// Serves snapshots captured ahead of time under `<root>/<task id>/`.
#[derive(Debug, Clone)]
pub struct SnapshotDirRenderer {
    pub root: PathBuf,
}

impl Renderer for SnapshotDirRenderer {
    fn render(&mut self, task: &WebTask, _code: &GeneratedCode) -> Result<Generation, WebError> {
        let dir = self.root.join(&task.id);
        if !dir.is_dir() {
            return Ok(Generation::pages(Vec::new()));
        }
        load_generation(&dir)
    }
}

/// Outcome of one WebUI episode.
#[derive(Debug, Clone, PartialEq)]
pub struct WebEpisode {
    pub result: EpisodeResult,
    pub code: Option<GeneratedCode>,
    pub report: AesReport,
}

/// Asks `agent` for code once (plus `retries` identical re-asks while the
/// reply has no html block), renders it and scores the result.
pub fn run_task<A, R>(
    agent: &mut A,
    task: &WebTask,
    renderer: &mut R,
    retries: usize,
    cfg: &MatchConfig,
    w: &ScoreWeights,
) -> Result<WebEpisode, WebError>
where
    A: Agent<WebTask> + ?Sized,
    R: Renderer + ?Sized,
{
    let prompts = task.prompts();
    agent.start(&EpisodeInfo {
        env: "webui".into(),
        level_id: task.id.clone(),
        mode: PlannerMode::Global,
        prompts: prompts.clone(),
        vocabulary: Vec::new(),
    })?;
    let first = Observation { step: 1, text: String::new(), image: None };
    let context = global_context(&prompts, &first);
    let mut transcript = Transcript { turns: context.clone(), ..Default::default() };
    let observations = [first];
    let mut outputs = Vec::new();
    let mut code = None;
    for attempt in 0..=retries {
        let request = DecisionRequest {
            step: 1,
            attempt,
            mode: PlannerMode::Global,
            context: &context,
            observations: &observations,
            state: task,
            vocabulary: WEBUI_VOCABULARY,
        };
        let raw = agent.act(&request)?;
        transcript.raw_outputs.push(raw.clone());
        transcript.turns.push(Turn { role: Role::Agent, text: raw.clone(), observation: None });
        code = extract_code(&raw);
        let actions = code.as_ref().map(|c| {
            let mut langs = vec!["html".to_string()];
            langs.extend(c.css.as_ref().map(|_| "css".to_string()));
            langs.extend(c.javascript.as_ref().map(|_| "javascript".to_string()));
            langs
        });
        outputs.push(OutputRecord { raw, actions });
        if code.is_some() {
            break;
        }
    }
    let generation = match &code {
        Some(c) => renderer.render(task, c)?,
        None => Generation::Unparsed,
    };
    let report = aes(&generation, &task.gt, cfg, w)?;
    agent.finish(report.aes)?;
    let result = EpisodeResult {
        env: "webui".into(),
        level_id: task.id.clone(),
        mode: PlannerMode::Global,
        repeat: 0,
        seed: 0,
        score: report.aes,
        rewards: Vec::new(),
        decisions: 1,
        agent_calls: outputs.len(),
        unparsed_decisions: usize::from(code.is_none()),
        elapsed: 0,
        termination: Termination::Terminal,
        classification: classify_errors(&outputs),
        aes_buckets: Some(report.buckets),
        outputs,
        transcript,
    };
    Ok(WebEpisode { result, code, report })
}
