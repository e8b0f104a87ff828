//! Frame skipping: fast-forward through stretches where agent input cannot
//! matter (ball in the air) or is predictable (straight-line running).

use serde::{Deserialize, Serialize};

use super::actions::{Action, Direction};
use super::bots::BotPolicy;
use super::physics::step;
use super::reward::{FrameEvents, RewardWeights};
use super::state::{FootballState, Outcome, POSSESSION_RADIUS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutoRenderConfig {
    pub max_skip_frames: usize,
    pub lookahead: usize,
    /// Predicted holder-to-opponent distance that hands control back.
    pub proximity: f64,
}

impl Default for AutoRenderConfig {
    fn default() -> Self {
        AutoRenderConfig { max_skip_frames: 10, lookahead: 5, proximity: 2.0 * POSSESSION_RADIUS }
    }
}

impl AutoRenderConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.lookahead > self.max_skip_frames {
            return Err(format!("lookahead {} exceeds max_skip_frames {}", self.lookahead, self.max_skip_frames));
        }
        if !(self.proximity > 0.0) {
            return Err("proximity threshold must be positive".into());
        }
        Ok(())
    }
}

/// Constant-velocity extrapolation: does any opponent come within
/// `cfg.proximity` of the holder during the next `cfg.lookahead` frames?
pub fn collision_predicted(state: &FootballState, cfg: &AutoRenderConfig) -> bool {
    let Some(h) = state.ball.holder else { return false };
    let holder = state.players[h];
    (1..=cfg.lookahead).any(|i| {
        let k = i as f64;
        let me = holder.pos + holder.vel * k;
        state.opponents().any(|o| (o.pos + o.vel * k).dist(me) < cfg.proximity)
    })
}

fn held_safely(state: &FootballState, cfg: &AutoRenderConfig) -> bool {
    state.we_hold() && state.nearest_opponent_distance().is_none_or(|d| d >= cfg.proximity)
}

/// Frames simulated without consulting the agent.
#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub state: FootballState,
    /// Each skipped frame's resulting state and events, in order.
    pub trace: Vec<(FootballState, FrameEvents)>,
}

impl Skipped {
    pub fn frames_skipped(&self) -> usize {
        self.trace.len()
    }
}

/// Skips frames after the agent's latest action.
///
/// With the ball in flight, frames run until it is received or lost. If the
/// last two actions were the same direction, that direction is repeated for
/// up to `max_skip_frames` frames; before each one the lookahead guard runs,
/// and a frame that would leave an opponent within `proximity` of the
/// holder is not taken. Skipping also stops on any change of possession.
pub fn auto_render(
    state: &FootballState,
    last_two: [Option<Action>; 2],
    cfg: &AutoRenderConfig,
    bots: &dyn BotPolicy,
    w: &RewardWeights,
) -> Skipped {
    let mut s = state.clone();
    let mut trace = Vec::new();
    if s.ball.in_flight {
        while s.ball.in_flight && !s.is_terminal() {
            let (next, ev) = step(&s, Action::Idle, bots, w);
            s = next;
            trace.push((s.clone(), ev));
        }
        return Skipped { state: s, trace };
    }
    let direction: Option<Direction> = match last_two {
        [Some(a), Some(b)] if a == b => a.direction(),
        _ => None,
    };
    let Some(d) = direction else { return Skipped { state: s, trace } };
    let controlled = s.controlled;
    for _ in 0..cfg.max_skip_frames {
        if s.is_terminal() || !s.we_hold() || collision_predicted(&s, cfg) {
            break;
        }
        let (next, ev) = step(&s, Action::Move(d), bots, w);
        if next.outcome != Some(Outcome::Survived) && !held_safely(&next, cfg) {
            break;
        }
        s = next;
        trace.push((s.clone(), ev));
        if s.is_terminal() || s.controlled != controlled {
            break;
        }
    }
    Skipped { state: s, trace }
}
