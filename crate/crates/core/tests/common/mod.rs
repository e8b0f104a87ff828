//! Reference implementations shared by the integration tests. They are
//! written against the raw level grid only and do not call into the
//! crate's movement, pruning or reward code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use arena_core::sokoban::{Cell, Dir, Level};

/// Player position and sorted box positions.
pub type Pose = (usize, Vec<usize>);

fn offset(level: &Level, idx: usize, dir: Dir) -> Option<usize> {
    let (r, c) = (idx / level.width, idx % level.width);
    let (r, c) = match dir {
        Dir::Up => (r.checked_sub(1)?, c),
        Dir::Down => (r + 1, c),
        Dir::Left => (r, c.checked_sub(1)?),
        Dir::Right => (r, c + 1),
    };
    (r < level.height && c < level.width).then(|| r * level.width + c)
}

fn open(level: &Level, idx: usize) -> bool {
    level.cells[idx] != Cell::Wall
}

/// One move under plain Sokoban rules. `None` when the move is blocked.
/// The flags say whether a box was pushed and from/to which kind of cell.
pub fn push_move(level: &Level, pose: &Pose, dir: Dir) -> Option<(Pose, Option<(bool, bool)>)> {
    let (player, boxes) = pose;
    let next = offset(level, *player, dir).filter(|&n| open(level, n))?;
    match boxes.iter().position(|&b| b == next) {
        None => Some(((next, boxes.clone()), None)),
        Some(i) => {
            let beyond = offset(level, next, dir).filter(|&n| open(level, n) && !boxes.contains(&n))?;
            let mut moved = boxes.clone();
            moved[i] = beyond;
            moved.sort_unstable();
            let from_target = level.cells[next] == Cell::Target;
            let to_target = level.cells[beyond] == Cell::Target;
            Some(((next, moved), Some((from_target, to_target))))
        }
    }
}

fn solved(level: &Level, boxes: &[usize]) -> bool {
    boxes.iter().all(|&b| level.cells[b] == Cell::Target)
}

/// Plain breadth-first search over every reachable pose: no deadlock
/// pruning, no heuristics. Returns the optimal move count within
/// `max_steps`.
pub fn unpruned_bfs_from(level: &Level, start: Pose, max_steps: usize) -> Option<usize> {
    if solved(level, &start.1) {
        return Some(0);
    }
    let mut seen: HashSet<Pose> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((pose, depth)) = queue.pop_front() {
        if depth == max_steps {
            continue;
        }
        for dir in [Dir::Up, Dir::Down, Dir::Left, Dir::Right] {
            let Some((next, _)) = push_move(level, &pose, dir) else { continue };
            if solved(level, &next.1) {
                return Some(depth + 1);
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    None
}

pub fn unpruned_bfs(level: &Level, max_steps: usize) -> Option<usize> {
    unpruned_bfs_from(level, (level.player, level.boxes.clone()), max_steps)
}

/// Rewards for replaying `plan`, from the scaled classic reward table:
/// +54.5 for the completing move, +4.5 onto a target, -5.5 off a target,
/// -0.5 otherwise.
pub fn replay_rewards(level: &Level, plan: &[Dir]) -> Vec<f64> {
    let mut pose = (level.player, level.boxes.clone());
    let mut out = Vec::new();
    for &dir in plan {
        if solved(level, &pose.1) {
            break;
        }
        let reward = match push_move(level, &pose, dir) {
            None => -0.5,
            Some((next, push)) => {
                let r = if solved(level, &next.1) {
                    54.5
                } else {
                    match push {
                        Some((false, true)) => 4.5,
                        Some((true, false)) => -5.5,
                        _ => -0.5,
                    }
                };
                pose = next;
                r
            }
        };
        out.push(reward);
    }
    out
}

/// Every way to place `boxes` boxes, as many targets and the player on the
/// open cells of `walls` (a grid in level notation without pieces).
pub fn placements(walls: &str, boxes: usize) -> Vec<Level> {
    let rows: Vec<Vec<char>> = walls.lines().map(|l| l.chars().collect()).collect();
    let free: Vec<(usize, usize)> =
        rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().filter(|(_, ch)| **ch == ' ').map(move |(c, _)| (r, c))).collect();
    let mut out = Vec::new();
    for bset in subsets(free.len(), boxes) {
        for tset in subsets(free.len(), boxes) {
            for p in 0..free.len() {
                if bset.contains(&p) {
                    continue;
                }
                let mut grid = rows.clone();
                for &t in &tset {
                    grid[free[t].0][free[t].1] = '.';
                }
                for &b in &bset {
                    let (r, c) = free[b];
                    grid[r][c] = if grid[r][c] == '.' { '*' } else { '$' };
                }
                let (r, c) = free[p];
                grid[r][c] = if grid[r][c] == '.' { '+' } else { '@' };
                let text: String = grid.iter().map(|row| row.iter().collect::<String>() + "\n").collect();
                out.push(Level::parse_grid(&text).expect("generated grid is well formed"));
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in subsets(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut s = vec![first];
                s.extend(rest);
                out.push(s);
            }
        }
    }
    out
}

/// A 6x6 room with a 4x4 interior and an optional inner wall.
pub fn room4(inner_wall: Option<(usize, usize)>) -> String {
    let mut rows = vec!["######".to_string()];
    for r in 1..=4 {
        let mut row = String::from("#");
        for c in 1..=4 {
            row.push(if inner_wall == Some((r, c)) { '#' } else { ' ' });
        }
        row.push('#');
        rows.push(row);
    }
    rows.push("######".to_string());
    rows.join("\n") + "\n"
}

/// A 6x5 room with a 4x3 interior.
pub fn room4x3() -> String {
    "######\n#    #\n#    #\n#    #\n######\n".to_string()
}
