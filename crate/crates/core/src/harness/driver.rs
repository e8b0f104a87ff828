use serde::{Deserialize, Serialize};

use crate::aes::ErrorBuckets;

use super::classify::{classify_errors, ErrorClassification};
use super::parse::{parse_actions, ParseMode};
use super::prompts::PromptSet;
use super::transcript::{global_context, online_context, Role, Transcript, Turn};
use super::{Agent, AgentError, ConfigError, DecisionRequest, Environment, EpisodeInfo, HarnessError, Observation, PlannerConfig, PlannerMode};

/// One raw agent reply and the actions parsed from it (`None` on a parse
/// error).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub raw: String,
    pub actions: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// The environment reached a terminal state.
    Terminal,
    /// The decision (or action) budget ran out.
    MaxSteps,
    /// A global plan ended before the episode did.
    ActionsExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeResult {
    pub env: String,
    pub level_id: String,
    pub mode: PlannerMode,
    #[serde(default)]
    pub repeat: usize,
    #[serde(default)]
    pub seed: u64,
    pub score: f64,
    pub rewards: Vec<f64>,
    /// Decision points at which the agent was consulted.
    pub decisions: usize,
    /// Agent queries including retries.
    pub agent_calls: usize,
    pub unparsed_decisions: usize,
    pub elapsed: usize,
    pub termination: Termination,
    pub classification: ErrorClassification,
    /// Where the lost AES went, for WebUI episodes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aes_buckets: Option<ErrorBuckets>,
    pub outputs: Vec<OutputRecord>,
    pub transcript: Transcript,
}

struct Query<'a> {
    step: usize,
    mode: PlannerMode,
    parse: ParseMode,
    retries: usize,
    context: &'a [Turn],
    observations: &'a [Observation],
}

struct Answer {
    actions: Option<Vec<&'static str>>,
    raw: String,
    calls: usize,
}

/// Queries the agent, re-sending the identical request after each parse
/// error, up to `1 + retries` calls.
fn ask<E, A>(agent: &mut A, env: &E, q: &Query<'_>, log: &mut Transcript, outputs: &mut Vec<OutputRecord>) -> Result<Answer, AgentError>
where
    E: Environment,
    A: Agent<E::State> + ?Sized,
{
    let vocab = env.vocabulary();
    let mut last = String::new();
    for attempt in 0..=q.retries {
        let request = DecisionRequest {
            step: q.step,
            attempt,
            mode: q.mode,
            context: q.context,
            observations: q.observations,
            state: env.state(),
            vocabulary: vocab,
        };
        let raw = agent.act(&request)?;
        log.raw_outputs.push(raw.clone());
        log.turns.push(Turn { role: Role::Agent, text: raw.clone(), observation: None });
        let parsed = parse_actions(&raw, vocab, q.parse).ok();
        outputs.push(OutputRecord {
            raw: raw.clone(),
            actions: parsed.as_ref().map(|a| a.iter().map(|s| s.to_string()).collect()),
        });
        if parsed.is_some() {
            return Ok(Answer { actions: parsed, raw, calls: attempt + 1 });
        }
        last = raw;
    }
    Ok(Answer { actions: None, raw: last, calls: q.retries + 1 })
}

fn finish<E: Environment>(
    env: &E,
    mode: PlannerMode,
    decisions: usize,
    agent_calls: usize,
    unparsed: usize,
    termination: Termination,
    outputs: Vec<OutputRecord>,
    transcript: Transcript,
) -> EpisodeResult {
    EpisodeResult {
        env: env.name().to_string(),
        level_id: env.level_id(),
        mode,
        repeat: 0,
        seed: 0,
        score: env.score(),
        rewards: env.rewards().to_vec(),
        decisions,
        agent_calls,
        unparsed_decisions: unparsed,
        elapsed: env.elapsed(),
        termination,
        classification: classify_errors(&outputs),
        aes_buckets: None,
        outputs,
        transcript,
    }
}

/// Global planner: one query on the initial observation, then the parsed
/// plan is replayed until it ends, the episode terminates or
/// `cfg.max_steps` actions have been applied.
pub fn run_global<E, A>(agent: &mut A, env: &mut E, prompts: &PromptSet, cfg: &PlannerConfig) -> Result<EpisodeResult, HarnessError>
where
    E: Environment,
    A: Agent<E::State> + ?Sized,
{
    if !env.supports_global() {
        return Err(ConfigError::GlobalUnsupported(env.name().to_string()).into());
    }
    let first = env.observe(1);
    let context = global_context(prompts, &first);
    let mut log = Transcript { turns: context.clone(), ..Default::default() };
    let mut outputs = Vec::new();
    let observations = [first];
    let q = Query {
        step: 1,
        mode: PlannerMode::Global,
        parse: ParseMode::Sequence,
        retries: cfg.max_parse_retries,
        context: &context,
        observations: &observations,
    };
    let answer = ask(agent, env, &q, &mut log, &mut outputs)?;
    let unparsed = usize::from(answer.actions.is_none());
    let plan = answer.actions.unwrap_or_default();
    let mut applied = 0;
    for action in &plan {
        if env.is_terminal() || applied >= cfg.max_steps {
            break;
        }
        if env.apply(action) {
            log.actions.push(action.to_string());
            applied += 1;
        }
    }
    let termination = if env.is_terminal() {
        Termination::Terminal
    } else if applied < plan.len() {
        Termination::MaxSteps
    } else {
        Termination::ActionsExhausted
    };
    Ok(finish(env, PlannerMode::Global, 1, answer.calls, unparsed, termination, outputs, log))
}

/// Online planner: one decision per step with an AM/OM-windowed context.
/// An unparsed decision leaves the environment untouched but still uses up
/// one of the `cfg.max_steps` decision slots.
pub fn run_online<E, A>(agent: &mut A, env: &mut E, prompts: &PromptSet, cfg: &PlannerConfig) -> Result<EpisodeResult, HarnessError>
where
    E: Environment,
    A: Agent<E::State> + ?Sized,
{
    cfg.validate()?;
    let mut log = Transcript::default();
    let mut outputs = Vec::new();
    let mut observations: Vec<Observation> = Vec::new();
    let mut prior_outputs: Vec<String> = Vec::new();
    let mut calls = 0;
    let mut unparsed = 0;
    let mut decisions = 0;
    for step in 1..=cfg.max_steps {
        if env.is_terminal() {
            break;
        }
        observations.push(env.observe(step));
        // Images that left the observation window are never shown again.
        if let Some(stale) = observations.len().checked_sub(cfg.observation_memory + 1) {
            observations[stale].image = None;
        }
        let context = online_context(prompts, &observations, &prior_outputs, cfg.action_memory, cfg.observation_memory);
        if step == 1 {
            log.turns.extend(context.iter().cloned());
        } else {
            log.turns.push(context.last().expect("non-empty context").clone());
        }
        let window_start = observations.len().saturating_sub(cfg.observation_memory);
        let q = Query {
            step,
            mode: PlannerMode::Online,
            parse: ParseMode::Single,
            retries: cfg.max_parse_retries,
            context: &context,
            observations: &observations[window_start..],
        };
        let answer = ask(agent, env, &q, &mut log, &mut outputs)?;
        calls += answer.calls;
        decisions += 1;
        match answer.actions.as_deref() {
            Some([action, ..]) => {
                if env.apply(action) {
                    log.actions.push(action.to_string());
                }
            }
            _ => unparsed += 1,
        }
        prior_outputs.push(answer.raw);
    }
    let termination = if env.is_terminal() { Termination::Terminal } else { Termination::MaxSteps };
    Ok(finish(env, PlannerMode::Online, decisions, calls, unparsed, termination, outputs, log))
}

/// Runs one full episode in `cfg.mode`, bracketing it with the agent's
/// start and finish hooks.
pub fn run_episode<E, A>(agent: &mut A, env: &mut E, cfg: &PlannerConfig) -> Result<EpisodeResult, HarnessError>
where
    E: Environment,
    A: Agent<E::State> + ?Sized,
{
    let prompts = env.prompts(cfg.mode);
    agent.start(&EpisodeInfo {
        env: env.name().to_string(),
        level_id: env.level_id(),
        mode: cfg.mode,
        prompts: prompts.clone(),
        vocabulary: env.vocabulary().iter().map(|s| s.to_string()).collect(),
    })?;
    let result = match cfg.mode {
        PlannerMode::Global => run_global(agent, env, &prompts, cfg)?,
        PlannerMode::Online => run_online(agent, env, &prompts, cfg)?,
    };
    agent.finish(result.score)?;
    Ok(result)
}
