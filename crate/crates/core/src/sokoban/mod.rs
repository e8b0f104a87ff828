//! Sokoban: push-semantics grid puzzle with an optimal solver, deadlock
//! detection, tiered procedural generation and best-prefix scoring.

mod deadlock;
mod env;
mod generate;
mod level;
mod render;
mod reward;
mod solver;
mod state;

pub use deadlock::{is_deadlock, is_box_deadlocked};
pub use env::SokobanEnv;
pub use generate::{corpus_plan, generate_level, CorpusEntry, GenerateError, TierParams, CORPUS_SIZE, TIERS};
pub use level::{Cell, Dir, Level, LevelError, DIRS};
pub use render::{render, TILE};
pub use reward::{reward_step, score_episode, trajectory_rewards, RewardTable};
pub use solver::{solve_bfs, MAX_SOLUTION_STEPS};
pub use state::{SokobanState, StepEvents};

/// Action vocabulary exposed to agents.
pub const ACTIONS: [&str; 4] = ["Up", "Down", "Left", "Right"];
