use std::sync::Arc;

use super::level::{Dir, Level};
use super::render::render;
use super::reward::{reward_step, score_episode, RewardTable};
use super::solver::MAX_SOLUTION_STEPS;
use super::state::SokobanState;
use super::ACTIONS;
use crate::harness::{Environment, Observation, PlannerMode, PromptSet};

/// Sokoban wrapped for the episode harness.
#[derive(Debug, Clone)]
pub struct SokobanEnv {
    id: String,
    state: SokobanState,
    table: RewardTable,
    rewards: Vec<f64>,
}

impl SokobanEnv {
    pub fn new(id: impl Into<String>, level: Arc<Level>) -> Self {
        SokobanEnv {
            id: id.into(),
            state: SokobanState::initial(level),
            table: RewardTable::default(),
            rewards: Vec::new(),
        }
    }

    pub fn level(&self) -> &Level {
        &self.state.level
    }
}

impl Environment for SokobanEnv {
    type State = SokobanState;

    fn name(&self) -> &'static str {
        "sokoban"
    }

    fn level_id(&self) -> String {
        self.id.clone()
    }

    fn vocabulary(&self) -> &'static [&'static str] {
        &ACTIONS
    }

    fn prompts(&self, mode: PlannerMode) -> PromptSet {
        PromptSet::sokoban(mode)
    }

    fn observe(&self, step: usize) -> Observation {
        Observation { step, text: String::new(), image: Some(render(&self.state)) }
    }

    fn state(&self) -> &SokobanState {
        &self.state
    }

    fn apply(&mut self, action: &str) -> bool {
        let Ok(dir) = action.parse::<Dir>() else { return false };
        if self.is_terminal() {
            return false;
        }
        let (next, events) = self.state.step(dir);
        self.rewards.push(reward_step(&events, &self.table));
        self.state = next;
        true
    }

    /// Solved, or out of the 50-step budget.
    fn is_terminal(&self) -> bool {
        self.state.done || self.state.steps_taken >= MAX_SOLUTION_STEPS
    }

    fn rewards(&self) -> &[f64] {
        &self.rewards
    }

    fn score(&self) -> f64 {
        score_episode(&self.rewards, self.state.level.r_best)
    }

    fn elapsed(&self) -> usize {
        self.state.steps_taken
    }
}
