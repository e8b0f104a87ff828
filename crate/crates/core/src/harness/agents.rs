use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Agent, AgentError, DecisionRequest, PlannerMode};

/// Baseline that never acts. Uses the environment's idle action when it has
/// one, otherwise replies with an empty action section.
#[derive(Debug, Default, Clone)]
pub struct IdleAgent;

impl<S> Agent<S> for IdleAgent {
    fn act(&mut self, request: &DecisionRequest<'_, S>) -> Result<String, AgentError> {
        let idle = request.vocabulary.iter().find(|a| a.ends_with("idle"));
        Ok(match (request.mode, idle) {
            (PlannerMode::Online, Some(a)) => format!("# analyze\nwait\n# action\n{a}"),
            (PlannerMode::Online, None) => "# analyze\nwait\n# action\n".to_string(),
            (PlannerMode::Global, _) => "### Analyze\nwait\n### Actions\n".to_string(),
        })
    }
}

/// Baseline that picks uniformly random vocabulary actions.
#[derive(Debug, Clone)]
pub struct RandomAgent {
    rng: ChaCha8Rng,
    plan_length: usize,
}

impl RandomAgent {
    pub fn new(seed: u64) -> Self {
        RandomAgent { rng: ChaCha8Rng::seed_from_u64(seed), plan_length: 50 }
    }

    pub fn with_plan_length(mut self, len: usize) -> Self {
        self.plan_length = len;
        self
    }
}

impl<S> Agent<S> for RandomAgent {
    fn act(&mut self, request: &DecisionRequest<'_, S>) -> Result<String, AgentError> {
        let vocab = request.vocabulary;
        let mut pick = || *vocab.choose(&mut self.rng).expect("non-empty vocabulary");
        Ok(match request.mode {
            PlannerMode::Online => format!("# analyze\nrandom\n# action\n{}", pick()),
            PlannerMode::Global => {
                let plan: Vec<&str> = (0..self.plan_length).map(|_| pick()).collect();
                format!("### Analyze\nrandom\n### Actions\n{}", plan.join(", "))
            }
        })
    }
}

/// Replays canned replies in order; once exhausted it repeats the last one.
#[derive(Debug, Clone, Default)]
pub struct ScriptedAgent {
    replies: VecDeque<String>,
    last: String,
    pub calls: usize,
}

impl ScriptedAgent {
    pub fn new<I, T>(replies: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        ScriptedAgent { replies: replies.into_iter().map(Into::into).collect(), last: String::new(), calls: 0 }
    }
}

impl<S> Agent<S> for ScriptedAgent {
    fn act(&mut self, _request: &DecisionRequest<'_, S>) -> Result<String, AgentError> {
        self.calls += 1;
        if let Some(next) = self.replies.pop_front() {
            self.last = next;
        }
        Ok(self.last.clone())
    }
}
