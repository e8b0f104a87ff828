//! A lightweight 2-D football match.
//!
//! One of our players (always the ball holder) is controlled by the agent;
//! the other 21 follow built-in policies. Episodes start from a
//! [`Scenario`] and end on a goal, a loss of possession, or after
//! [`HORIZON`] frames. Rewards are dense and shaped per frame, see
//! [`reward_frame`].

mod actions;
mod autorender;
mod bots;
mod controller;
mod env;
mod geometry;
mod physics;
mod render;
mod reward;
mod scenario;
mod state;

use serde::{Deserialize, Serialize};

pub use actions::{Action, Direction, PassKind, UnknownAction, ACTIONS};
pub use autorender::{auto_render, collision_predicted, AutoRenderConfig, Skipped};
pub use bots::{BotPolicy, HeuristicBots};
pub use controller::BotController;
pub use env::{FootballEnv, ReplayFrame};
pub use geometry::{goal_targets, opponent_goal, point_segment_distance, Vec2, FIELD_X, FIELD_Y, GOAL_HALF_WIDTH};
pub use physics::{select_receiver, step, INTERCEPT_RADIUS, KEEPER_REACH, RECEIVE_RADIUS, SHOT_SPEED};
pub use render::render;
pub use reward::{best_shot, interception_term, reward_frame, s_move, s_oppo, s_pass, s_shot, FrameEvents, RewardWeights, SHOT_CAP};
pub use scenario::{
    full_sweep, generate_scenario, realworld_fixtures, scenario_id, Category, Placement, Region, Scenario, ScenarioError, LANE_BUFFER,
    SCENARIO_COUNT, SCENES_PER_CELL, START_CLEARANCE,
};
pub use state::{
    passed, Anchor, Ball, Flight, FootballState, Outcome, Player, Sticky, Team, BASE_SPEED, HORIZON, PLAYERS_PER_TEAM, POSSESSION_RADIUS,
};

use crate::harness::{self, Agent, EpisodeResult, HarnessError, PlannerConfig, PlannerMode};

/// Settings for one football episode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FootballRunConfig {
    pub planner: PlannerConfig,
    /// `None` disables frame skipping: one decision per frame.
    pub auto_render: Option<AutoRenderConfig>,
    pub weights: RewardWeights,
    pub images: bool,
}

impl Default for FootballRunConfig {
    fn default() -> Self {
        FootballRunConfig {
            planner: PlannerConfig::standard(PlannerMode::Online, HORIZON),
            auto_render: Some(AutoRenderConfig::default()),
            weights: RewardWeights::default(),
            images: true,
        }
    }
}

/// Plays `scenario` to the end with `agent` in online mode.
pub fn run_episode<A>(scenario: &Scenario, agent: &mut A, cfg: &FootballRunConfig) -> Result<EpisodeResult, HarnessError>
where
    A: Agent<FootballState> + ?Sized,
{
    let mut env = FootballEnv::new(scenario).with_auto_render(cfg.auto_render).with_weights(cfg.weights);
    if !cfg.images {
        env = env.without_images();
    }
    harness::run_episode(agent, &mut env, &cfg.planner)
}
