use super::level::Dir;
use super::state::{SokobanState, StepEvents};

/// Per-step reward constants (the classic Sokoban scheme scaled by five).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardTable {
    pub push_to_target: f64,
    pub push_off_target: f64,
    pub done_bonus: f64,
    pub step_penalty: f64,
}

impl Default for RewardTable {
    fn default() -> Self {
        RewardTable { push_to_target: 4.5, push_off_target: -5.5, done_bonus: 54.5, step_penalty: -0.5 }
    }
}

/// Exactly one case applies per step; the completing push earns only the
/// done bonus.
pub fn reward_step(events: &StepEvents, table: &RewardTable) -> f64 {
    if events.completed {
        table.done_bonus
    } else if events.push_to_target {
        table.push_to_target
    } else if events.push_off_target {
        table.push_off_target
    } else {
        table.step_penalty
    }
}

/// Best cumulative reward over all prefixes (the empty prefix counts as 0),
/// shifted so that the optimal trajectory scores 100.
pub fn score_episode(trace: &[f64], r_best: f64) -> f64 {
    let mut best = 0.0_f64;
    let mut sum = 0.0;
    for r in trace {
        sum += r;
        best = best.max(sum);
    }
    best - r_best + 100.0
}

/// Rewards collected by replaying `actions` from `state`, stopping at the
/// terminal state.
pub fn trajectory_rewards(state: &SokobanState, actions: &[Dir], table: &RewardTable) -> Vec<f64> {
    let mut current = state.clone();
    let mut out = Vec::with_capacity(actions.len());
    for &a in actions {
        if current.done {
            break;
        }
        let (next, ev) = current.step(a);
        out.push(reward_step(&ev, table));
        current = next;
    }
    out
}
