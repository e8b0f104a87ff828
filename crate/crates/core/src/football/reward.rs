use serde::{Deserialize, Serialize};

use super::geometry::{goal_targets, opponent_goal, point_segment_distance, Vec2, GOAL_HALF_WIDTH};
use super::state::HORIZON;

/// Upper bound on the shot-openness term.
pub const SHOT_CAP: f64 = GOAL_HALF_WIDTH;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardWeights {
    pub move_weight: f64,
    pub oppo_weight: f64,
    pub score_weight: f64,
    pub steal_weight: f64,
    pub pass_weight: f64,
    pub shot_weight: f64,
    pub horizon: usize,
    pub beta: f64,
    pub epsilon: f64,
}

impl Default for RewardWeights {
    fn default() -> Self {
        RewardWeights {
            move_weight: 16.0,
            oppo_weight: 20.0,
            score_weight: 40.0,
            steal_weight: 20.0,
            pass_weight: 400.0,
            shot_weight: 100.0,
            horizon: HORIZON,
            beta: 10.0,
            epsilon: 1.0,
        }
    }
}

/// Everything that happened in one simulated frame, as needed by the reward.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FrameEvents {
    /// Frame index `t` after the step (1-based).
    pub frame: usize,
    /// Our team owned the ball at the end of this frame.
    pub owned: bool,
    pub s_move: f64,
    pub s_oppo: f64,
    pub scored: bool,
    pub stolen: bool,
    /// Possession survived to the horizon.
    pub survived: bool,
    /// `Some(s_pass)` on a successful reception.
    pub pass_received: Option<f64>,
    /// `Some(s_shot)` on the frame a shot is taken.
    pub shot_taken: Option<f64>,
}

/// Ball advance since the last owned frame; zero without possession.
pub fn s_move(owned: bool, ball_x: f64, anchor_ball_x: f64) -> f64 {
    if owned {
        ball_x - anchor_ball_x
    } else {
        0.0
    }
}

/// Change in the number of surpassed opponents, normalized by 11.
pub fn s_oppo(owned: bool, passed_now: usize, passed_anchor: usize) -> f64 {
    if owned {
        (passed_now as f64 - passed_anchor as f64) / 11.0
    } else {
        0.0
    }
}

/// Openness of a receiver: the minimum over opponents of
/// `L / (beta * max(cos, 0) + epsilon)`, where `cos` is taken between the
/// receiver-to-opponent and receiver-to-goal directions. Infinite with no
/// opponents.
pub fn s_pass(receiver: Vec2, opponents: &[Vec2], w: &RewardWeights) -> f64 {
    let to_goal = opponent_goal() - receiver;
    opponents
        .iter()
        .map(|&o| {
            let v = o - receiver;
            v.norm() / (w.beta * v.cos_angle(to_goal).max(0.0) + w.epsilon)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Openness of a shot: over the five goal aiming points, the best minimum
/// opponent-to-path distance, capped at [`SHOT_CAP`].
pub fn s_shot(shooter: Vec2, opponents: &[Vec2]) -> f64 {
    best_shot(shooter, opponents).1
}

/// The chosen aiming point and its capped openness.
pub fn best_shot(shooter: Vec2, opponents: &[Vec2]) -> (Vec2, f64) {
    let mut best = (goal_targets()[2], f64::NEG_INFINITY);
    for target in goal_targets() {
        let clearance = opponents
            .iter()
            .map(|&o| point_segment_distance(o, shooter, target))
            .fold(f64::INFINITY, f64::min)
            .min(SHOT_CAP);
        if clearance > best.1 {
            best = (target, clearance);
        }
    }
    best
}

/// Interception term: `steal_weight * t / T` when the episode ends by a
/// steal or by surviving to the horizon.
pub fn interception_term(frame: usize, w: &RewardWeights) -> f64 {
    w.steal_weight * frame as f64 / w.horizon as f64
}

/// Per-frame reward.
pub fn reward_frame(e: &FrameEvents, w: &RewardWeights) -> f64 {
    let mut r = w.move_weight * e.s_move + w.oppo_weight * e.s_oppo;
    if e.scored {
        r += w.score_weight;
    }
    if e.stolen || e.survived {
        r += interception_term(e.frame, w);
    }
    if let Some(p) = e.pass_received {
        r += w.pass_weight * p;
    }
    if let Some(s) = e.shot_taken {
        r += w.shot_weight * s;
    }
    r
}
