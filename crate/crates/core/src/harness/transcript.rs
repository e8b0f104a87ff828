use serde::{Deserialize, Serialize};

use super::prompts::{PromptSet, CONTINUE_PROMPT, IMAGE_UNAVAILABLE};
use super::Observation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Agent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    pub role: Role,
    pub text: String,
    /// Step index of the observation image attached to this turn.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub observation: Option<usize>,
}

impl Turn {
    fn new(role: Role, text: impl Into<String>, observation: Option<usize>) -> Self {
        Turn { role, text: text.into(), observation }
    }
}

/// Full record of an episode: every turn exchanged, every applied action and
/// every raw agent reply (retries included).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub turns: Vec<Turn>,
    pub actions: Vec<String>,
    pub raw_outputs: Vec<String>,
}

fn observation_slot(obs: &Observation, shown: bool) -> String {
    if !shown {
        IMAGE_UNAVAILABLE.trim_end().to_string()
    } else if obs.text.is_empty() {
        String::new()
    } else {
        obs.text.clone()
    }
}

fn join_nonempty(parts: &[&str]) -> String {
    parts.iter().filter(|p| !p.trim().is_empty()).copied().collect::<Vec<_>>().join("\n\n")
}

/// Context for the single global-planner query: system prompt, then the
/// task (and first observation) followed by the reasoning and format
/// instructions.
pub fn global_context(prompts: &PromptSet, first: &Observation) -> Vec<Turn> {
    let obs_text = observation_slot(first, true);
    let user = join_nonempty(&[
        prompts.task_prompt.as_deref().unwrap_or(""),
        &obs_text,
        &prompts.instructions(),
    ]);
    vec![
        Turn::new(Role::System, prompts.system_prompt.clone(), None),
        Turn::new(Role::User, user, Some(first.step)),
    ]
}

/// Windowed multi-turn context for online decision `t = observations.len()`.
///
/// `observations[i]` is `o_{i+1}` and `prior_outputs[i]` is the reply that
/// produced `a_{i+1}`; there must be exactly one more observation than
/// prior output. The window keeps the last `action_memory` replies and
/// attaches images only for the last `observation_memory` observations
/// (the current one included); older slots read "image not available.".
pub fn online_context(
    prompts: &PromptSet,
    observations: &[Observation],
    prior_outputs: &[String],
    action_memory: usize,
    observation_memory: usize,
) -> Vec<Turn> {
    let t = observations.len();
    assert_eq!(prior_outputs.len() + 1, t, "one observation per decision plus the current one");
    let kept = (t - 1).min(action_memory);
    let first_step = t - kept;
    let shown = |step: usize| step + observation_memory > t;

    let mut turns = Vec::with_capacity(2 + 2 * kept);
    turns.push(Turn::new(Role::System, prompts.system_prompt.clone(), None));
    let first_obs = &observations[first_step - 1];
    let first_text = join_nonempty(&[
        prompts.task_prompt.as_deref().unwrap_or(""),
        &observation_slot(first_obs, shown(first_step)),
        &prompts.instructions(),
    ]);
    turns.push(Turn::new(Role::User, first_text, shown(first_step).then_some(first_step)));
    for step in first_step..t {
        turns.push(Turn::new(Role::Agent, prior_outputs[step - 1].clone(), None));
        let next = step + 1;
        let obs = &observations[next - 1];
        let text = join_nonempty(&[CONTINUE_PROMPT.trim_end(), &observation_slot(obs, shown(next))]);
        turns.push(Turn::new(Role::User, text, shown(next).then_some(next)));
    }
    turns
}
