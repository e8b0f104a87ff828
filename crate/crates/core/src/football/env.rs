use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::actions::{Action, ACTIONS};
use super::autorender::{auto_render, AutoRenderConfig};
use super::bots::{BotPolicy, HeuristicBots};
use super::geometry::Vec2;
use super::physics::step;
use super::render::render;
use super::reward::{reward_frame, FrameEvents, RewardWeights};
use super::scenario::Scenario;
use super::state::FootballState;
use crate::harness::{Environment, Observation, PlannerMode, PromptSet};

/// One simulated frame as stored in a replay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayFrame {
    pub frame: usize,
    /// The agent's action, or `None` for frames simulated by auto-rendering.
    pub action: Option<String>,
    pub controlled: usize,
    pub ball: Vec2,
    pub players: Vec<Vec2>,
    pub events: FrameEvents,
    pub reward: f64,
}

/// Football wrapped for the episode harness. Only online planning is
/// supported.
#[derive(Clone)]
pub struct FootballEnv {
    id: String,
    state: FootballState,
    bots: Arc<dyn BotPolicy>,
    weights: RewardWeights,
    auto: Option<AutoRenderConfig>,
    images: bool,
    rewards: Vec<f64>,
    last_two: [Option<Action>; 2],
    skipped: usize,
    replay: Option<Vec<ReplayFrame>>,
}

impl FootballEnv {
    pub fn new(scenario: &Scenario) -> Self {
        FootballEnv {
            id: scenario.id.clone(),
            state: scenario.to_state(),
            bots: Arc::new(HeuristicBots::default()),
            weights: RewardWeights::default(),
            auto: Some(AutoRenderConfig::default()),
            images: true,
            rewards: Vec::new(),
            last_two: [None, None],
            skipped: 0,
            replay: None,
        }
    }

    pub fn with_auto_render(mut self, cfg: Option<AutoRenderConfig>) -> Self {
        self.auto = cfg;
        self
    }

    pub fn with_bots(mut self, bots: Arc<dyn BotPolicy>) -> Self {
        self.bots = bots;
        self
    }

    pub fn with_weights(mut self, weights: RewardWeights) -> Self {
        self.weights = weights;
        self
    }

    /// Disables rendering; observations then carry no image.
    pub fn without_images(mut self) -> Self {
        self.images = false;
        self
    }

    pub fn with_replay(mut self) -> Self {
        self.replay = Some(Vec::new());
        self
    }

    pub fn replay(&self) -> Option<&[ReplayFrame]> {
        self.replay.as_deref()
    }

    /// Frames simulated without an agent decision.
    pub fn frames_skipped(&self) -> usize {
        self.skipped
    }

    fn record(&mut self, action: Option<Action>, events: FrameEvents) {
        let reward = reward_frame(&events, &self.weights);
        self.rewards.push(reward);
        if let Some(replay) = self.replay.as_mut() {
            replay.push(ReplayFrame {
                frame: events.frame,
                action: action.map(|a| a.token().to_string()),
                controlled: self.state.controlled,
                ball: self.state.ball.pos,
                players: self.state.players.iter().map(|p| p.pos).collect(),
                events,
                reward,
            });
        }
    }

    /// Applies one decision: a single frame, then any auto-rendered frames.
    pub fn act(&mut self, action: Action) {
        if self.state.is_terminal() {
            return;
        }
        let (next, events) = step(&self.state, action, self.bots.as_ref(), &self.weights);
        self.state = next;
        self.record(Some(action), events);
        self.last_two = [self.last_two[1], Some(action)];
        if let Some(cfg) = self.auto {
            let skipped = auto_render(&self.state, self.last_two, &cfg, self.bots.as_ref(), &self.weights);
            self.skipped += skipped.frames_skipped();
            for (state, events) in skipped.trace {
                self.state = state;
                self.record(None, events);
            }
        }
    }
}

impl Environment for FootballEnv {
    type State = FootballState;

    fn name(&self) -> &'static str {
        "football"
    }

    fn level_id(&self) -> String {
        self.id.clone()
    }

    fn vocabulary(&self) -> &'static [&'static str] {
        &ACTIONS
    }

    fn prompts(&self, _mode: PlannerMode) -> PromptSet {
        PromptSet::football()
    }

    fn observe(&self, step: usize) -> Observation {
        Observation { step, text: String::new(), image: self.images.then(|| render(&self.state)) }
    }

    fn state(&self) -> &FootballState {
        &self.state
    }

    fn apply(&mut self, action: &str) -> bool {
        let Ok(a) = action.parse::<Action>() else { return false };
        if self.state.is_terminal() {
            return false;
        }
        self.act(a);
        true
    }

    fn is_terminal(&self) -> bool {
        self.state.is_terminal()
    }

    fn rewards(&self) -> &[f64] {
        &self.rewards
    }

    fn score(&self) -> f64 {
        self.rewards.iter().sum()
    }

    fn elapsed(&self) -> usize {
        self.state.frame
    }

    fn supports_global(&self) -> bool {
        false
    }
}
