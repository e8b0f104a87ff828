//! Episode driver for global and online planners.
//!
//! An [`Environment`] exposes observations, an action vocabulary and a
//! score. An [`Agent`] turns a decision request (the windowed transcript
//! plus the current observation) into raw text, which the harness parses
//! into actions with a small retry budget.

mod agents;
mod classify;
mod driver;
mod parse;
mod prompts;
mod transcript;
pub mod wire;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::raster::Raster;

pub use agents::{IdleAgent, RandomAgent, ScriptedAgent};
pub use classify::{classify_errors, ErrorClassification, ErrorKind};
pub use driver::{run_episode, run_global, run_online, EpisodeResult, OutputRecord, Termination};
pub use parse::{parse_actions, parse_code_blocks, ParseError, ParseMode};
pub use prompts::{PromptSet, CONTINUE_PROMPT, IMAGE_UNAVAILABLE};
pub use transcript::{global_context, online_context, Role, Transcript, Turn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlannerMode {
    Global,
    Online,
}

impl std::fmt::Display for PlannerMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlannerMode::Global => "global",
            PlannerMode::Online => "online",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("observation memory {om} exceeds action memory {am}")]
    MemoryOrder { am: usize, om: usize },
    #[error("observation memory must be at least 1")]
    NoObservationMemory,
    #[error("max_steps must be positive")]
    NoSteps,
    #[error("{0} does not support the global planner")]
    GlobalUnsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlannerConfig {
    pub mode: PlannerMode,
    pub action_memory: usize,
    pub observation_memory: usize,
    pub max_parse_retries: usize,
    /// Upper bound on agent decisions (global mode: on applied actions).
    pub max_steps: usize,
}

impl PlannerConfig {
    /// Standard settings: AM=5, OM=1, two retries after parse errors.
    pub fn standard(mode: PlannerMode, max_steps: usize) -> Self {
        PlannerConfig { mode, action_memory: 5, observation_memory: 1, max_parse_retries: 2, max_steps }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.observation_memory == 0 {
            return Err(ConfigError::NoObservationMemory);
        }
        if self.observation_memory > self.action_memory {
            return Err(ConfigError::MemoryOrder { am: self.action_memory, om: self.observation_memory });
        }
        if self.max_steps == 0 {
            return Err(ConfigError::NoSteps);
        }
        Ok(())
    }
}

/// What the agent sees at one decision.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    /// 1-based decision index this observation belongs to.
    pub step: usize,
    pub text: String,
    pub image: Option<Raster>,
}

/// A task an agent can be evaluated on.
pub trait Environment {
    /// Privileged state, visible only to built-in agents.
    type State;

    fn name(&self) -> &'static str;
    fn level_id(&self) -> String;
    fn vocabulary(&self) -> &'static [&'static str];
    fn prompts(&self, mode: PlannerMode) -> PromptSet;
    fn observe(&self, step: usize) -> Observation;
    fn state(&self) -> &Self::State;
    /// Applies one vocabulary action; returns false if the token is unknown.
    fn apply(&mut self, action: &str) -> bool;
    fn is_terminal(&self) -> bool;
    fn rewards(&self) -> &[f64];
    fn score(&self) -> f64;
    /// Simulation steps elapsed (moves for Sokoban, frames for football).
    fn elapsed(&self) -> usize;
    fn supports_global(&self) -> bool {
        true
    }
}

/// Episode-level information handed to the agent before the first decision.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeInfo {
    pub env: String,
    pub level_id: String,
    pub mode: PlannerMode,
    pub prompts: PromptSet,
    pub vocabulary: Vec<String>,
}

pub struct DecisionRequest<'a, S> {
    pub step: usize,
    /// 0 for the first query, 1.. for retries after a parse error.
    pub attempt: usize,
    pub mode: PlannerMode,
    /// Windowed conversation; turns with `observation = Some(k)` carry `o_k`.
    pub context: &'a [Turn],
    /// Observations referenced by `context`, oldest first.
    pub observations: &'a [Observation],
    pub state: &'a S,
    pub vocabulary: &'static [&'static str],
}

impl<S> DecisionRequest<'_, S> {
    /// The observation for the current decision.
    pub fn current(&self) -> &Observation {
        self.observations.last().expect("at least the current observation")
    }
}

#[derive(Debug, Error)]
pub enum AgentError {
    #[error("agent endpoint unreachable: {0}")]
    Unreachable(String),
    #[error("agent protocol violation: {0}")]
    Protocol(String),
    #[error("agent i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub trait Agent<S> {
    fn start(&mut self, _info: &EpisodeInfo) -> Result<(), AgentError> {
        Ok(())
    }

    fn act(&mut self, request: &DecisionRequest<'_, S>) -> Result<String, AgentError>;

    fn finish(&mut self, _score: f64) -> Result<(), AgentError> {
        Ok(())
    }
}

impl<S, A: Agent<S> + ?Sized> Agent<S> for Box<A> {
    fn start(&mut self, info: &EpisodeInfo) -> Result<(), AgentError> {
        (**self).start(info)
    }

    fn act(&mut self, request: &DecisionRequest<'_, S>) -> Result<String, AgentError> {
        (**self).act(request)
    }

    fn finish(&mut self, score: f64) -> Result<(), AgentError> {
        (**self).finish(score)
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Agent(#[from] AgentError),
}
