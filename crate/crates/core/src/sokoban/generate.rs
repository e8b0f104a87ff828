use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::level::{Cell, Dir, Level, DIRS};
use super::reward::{trajectory_rewards, RewardTable};
use super::solver::{solve_bfs, MAX_SOLUTION_STEPS};
use super::state::SokobanState;

/// Generation parameters for one difficulty tier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TierParams {
    pub tier: u8,
    /// Square grid side, including the outer wall.
    pub size: usize,
    pub boxes: usize,
    /// Minimum optimal solution length accepted for the tier.
    pub min_steps: usize,
    /// Number of levels of this tier in the standard corpus.
    pub corpus_count: usize,
}

pub const TIERS: [TierParams; 8] = [
    TierParams { tier: 1, size: 7, boxes: 1, min_steps: 3, corpus_count: 30 },
    TierParams { tier: 2, size: 8, boxes: 1, min_steps: 6, corpus_count: 28 },
    TierParams { tier: 3, size: 9, boxes: 2, min_steps: 8, corpus_count: 26 },
    TierParams { tier: 4, size: 10, boxes: 2, min_steps: 11, corpus_count: 24 },
    TierParams { tier: 5, size: 10, boxes: 3, min_steps: 13, corpus_count: 22 },
    TierParams { tier: 6, size: 11, boxes: 3, min_steps: 15, corpus_count: 20 },
    TierParams { tier: 7, size: 12, boxes: 3, min_steps: 17, corpus_count: 17 },
    TierParams { tier: 8, size: 13, boxes: 4, min_steps: 19, corpus_count: 15 },
];

pub const CORPUS_SIZE: usize = 182;

const ATTEMPT_BUDGET: usize = 400;

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("tier {0} is outside 1..=8")]
    BadTier(u8),
    #[error("no valid tier {tier} level found for seed {seed} after {attempts} attempts")]
    Exhausted { tier: u8, seed: u64, attempts: usize },
}

/// One slot of the standard corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub tier: u8,
    pub index: usize,
    pub seed: u64,
}

/// The 182 `(tier, index, seed)` slots of the corpus derived from `base_seed`.
pub fn corpus_plan(base_seed: u64) -> Vec<CorpusEntry> {
    TIERS
        .iter()
        .flat_map(|p| {
            (0..p.corpus_count).map(move |i| CorpusEntry {
                tier: p.tier,
                index: i,
                seed: base_seed
                    .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                    .wrapping_add((p.tier as u64) << 32 | i as u64),
            })
        })
        .collect()
}

/// Generates a level by reverse play: lay out a solved position, then walk
/// the player backwards pulling boxes off their targets. Candidates are kept
/// only if the solver proves them solvable within the tier's step window.
pub fn generate_level(tier: u8, seed: u64) -> Result<Level, GenerateError> {
    let params = TIERS
        .iter()
        .find(|p| p.tier == tier)
        .copied()
        .ok_or(GenerateError::BadTier(tier))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((tier as u64) << 56));
    for _ in 0..ATTEMPT_BUDGET {
        let Some(mut level) = candidate(&params, &mut rng) else { continue };
        let Some(plan) = solve_bfs(&level, MAX_SOLUTION_STEPS) else { continue };
        if plan.len() < params.min_steps {
            continue;
        }
        let start = SokobanState::initial(std::sync::Arc::new(level.clone()));
        let rewards = trajectory_rewards(&start, &plan, &RewardTable::default());
        level.tier = tier;
        level.optimal_steps = plan.len();
        level.r_best = rewards.iter().sum();
        return Ok(level);
    }
    Err(GenerateError::Exhausted { tier, seed, attempts: ATTEMPT_BUDGET })
}

fn candidate(params: &TierParams, rng: &mut ChaCha8Rng) -> Option<Level> {
    let size = params.size;
    let cells = carve_room(size, rng);
    let floor: Vec<usize> = (0..cells.len()).filter(|&i| cells[i] != Cell::Wall).collect();
    if floor.len() < params.boxes * 3 + 2 {
        return None;
    }
    let mut level = Level {
        width: size,
        height: size,
        cells,
        boxes: Vec::new(),
        targets: Vec::new(),
        player: 0,
        tier: params.tier,
        optimal_steps: 0,
        r_best: 0.0,
    };
    let mut picks = floor.clone();
    picks.shuffle(rng);
    let mut targets: Vec<usize> = picks[..params.boxes].to_vec();
    targets.sort_unstable();
    for &t in &targets {
        level.cells[t] = Cell::Target;
    }
    level.targets = targets.clone();
    let mut boxes = targets;
    let mut player = picks[params.boxes];

    // Reverse play: each move either just walks or drags the box behind the
    // player one cell along.
    let moves = rng.gen_range(params.min_steps * 3..params.min_steps * 8 + 10);
    let mut pulls = 0;
    for _ in 0..moves {
        let dir = *DIRS.choose(rng).expect("non-empty");
        let Some(dest) = level.neighbor(player, dir) else { continue };
        if level.is_wall(dest) || boxes.binary_search(&dest).is_ok() {
            continue;
        }
        let behind = level.neighbor(player, dir.opposite());
        let pull = behind.is_some_and(|b| boxes.binary_search(&b).is_ok()) && rng.gen_bool(0.8);
        if pull {
            let b = behind.expect("checked");
            let slot = boxes.binary_search(&b).expect("box present");
            boxes[slot] = player;
            boxes.sort_unstable();
            pulls += 1;
        }
        player = dest;
    }
    if pulls == 0 || level.is_solved_by(&boxes) {
        return None;
    }
    level.boxes = boxes;
    level.player = player;
    Some(level)
}

/// Random-walk room carving inside a wall border.
fn carve_room(size: usize, rng: &mut ChaCha8Rng) -> Vec<Cell> {
    let mut cells = vec![Cell::Wall; size * size];
    let inner = size - 2;
    let target_floor = (inner * inner) * rng.gen_range(45..70) / 100;
    let mut r = rng.gen_range(1..size - 1) as i32;
    let mut c = rng.gen_range(1..size - 1) as i32;
    let mut dir = *DIRS.choose(rng).expect("non-empty");
    let mut carved = 0;
    let mut guard = 0;
    while carved < target_floor && guard < 10_000 {
        guard += 1;
        let idx = r as usize * size + c as usize;
        if cells[idx] == Cell::Wall {
            cells[idx] = Cell::Floor;
            carved += 1;
        }
        // Occasionally widen the corridor to avoid pure mazes.
        if rng.gen_bool(0.3) {
            let (dr, dc) = perpendicular(dir);
            let (wr, wc) = (r + dr, c + dc);
            if (1..size as i32 - 1).contains(&wr) && (1..size as i32 - 1).contains(&wc) {
                let w = wr as usize * size + wc as usize;
                if cells[w] == Cell::Wall {
                    cells[w] = Cell::Floor;
                    carved += 1;
                }
            }
        }
        if rng.gen_bool(0.35) {
            dir = *DIRS.choose(rng).expect("non-empty");
        }
        let (dr, dc) = dir.delta();
        let (nr, nc) = (r + dr, c + dc);
        if (1..size as i32 - 1).contains(&nr) && (1..size as i32 - 1).contains(&nc) {
            r = nr;
            c = nc;
        } else {
            dir = dir.opposite();
        }
    }
    cells
}

fn perpendicular(dir: Dir) -> (i32, i32) {
    match dir {
        Dir::Up | Dir::Down => (0, 1),
        Dir::Left | Dir::Right => (1, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tier_table_sums_to_corpus_and_is_monotone() {
        assert_eq!(TIERS.iter().map(|t| t.corpus_count).sum::<usize>(), CORPUS_SIZE);
        for w in TIERS.windows(2) {
            assert!(w[0].size <= w[1].size && w[0].boxes <= w[1].boxes && w[0].min_steps < w[1].min_steps);
            assert!(w[0].size < w[1].size || w[0].boxes < w[1].boxes);
        }
        assert_eq!((TIERS[0].size, TIERS[0].boxes), (7, 1));
        assert_eq!((TIERS[7].size, TIERS[7].boxes), (13, 4));
    }

    #[test]
    fn tier_one_is_small_single_box_and_solvable() {
        for seed in 0..5 {
            let lvl = generate_level(1, seed).unwrap();
            assert_eq!(lvl.boxes.len(), 1);
            assert_eq!((lvl.width, lvl.height), (7, 7));
            let plan = solve_bfs(&lvl, MAX_SOLUTION_STEPS).unwrap();
            assert_eq!(plan.len(), lvl.optimal_steps);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(generate_level(3, 42).unwrap(), generate_level(3, 42).unwrap());
    }

    #[test]
    fn bad_tier_rejected() {
        assert_eq!(generate_level(9, 0), Err(GenerateError::BadTier(9)));
        assert_eq!(generate_level(0, 0), Err(GenerateError::BadTier(0)));
    }

    #[test]
    fn corpus_plan_has_182_slots() {
        let plan = corpus_plan(7);
        assert_eq!(plan.len(), CORPUS_SIZE);
        assert_eq!(plan.iter().filter(|e| e.tier == 8).count(), 15);
    }
}
