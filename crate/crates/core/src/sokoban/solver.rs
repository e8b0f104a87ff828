use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use super::deadlock::is_box_deadlocked;
use super::level::{Dir, Level, DIRS};

/// Every corpus level is solvable within this many steps.
pub const MAX_SOLUTION_STEPS: usize = 50;

const UNREACHED: u16 = u16::MAX;

struct Node {
    boxes: Box<[usize]>,
    player: usize,
    cost: usize,
    parent: Option<usize>,
    /// Cell the player walked to before pushing, and the push direction.
    push: Option<(usize, Dir)>,
    closed: bool,
}

/// Finds a minimum-step solution of at most `max_steps` moves.
///
/// The search runs over push states `(boxes, player)` with uniform-cost
/// expansion: walking between pushes is folded into edge costs, successors
/// that create a deadlock are discarded, revisited signatures are kept only
/// when reached more cheaply, and a push-distance lower bound trims states
/// that cannot finish within the budget.
pub fn solve_bfs(level: &Level, max_steps: usize) -> Option<Vec<Dir>> {
    if level.is_solved_by(&level.boxes) {
        return Some(Vec::new());
    }
    let mut nodes = vec![Node {
        boxes: level.boxes.clone().into_boxed_slice(),
        player: level.player,
        cost: 0,
        parent: None,
        push: None,
        closed: false,
    }];
    let mut index: HashMap<(Box<[usize]>, usize), usize> = HashMap::new();
    index.insert((nodes[0].boxes.clone(), level.player), 0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_steps + 1];
    buckets[0].push(0);
    let target_dist = push_distances(level);
    let mut dist = vec![UNREACHED; level.cells.len()];
    let mut queue = VecDeque::new();

    for cost in 0..=max_steps {
        let mut i = 0;
        while i < buckets[cost].len() {
            let id = buckets[cost][i];
            i += 1;
            if nodes[id].closed || nodes[id].cost != cost {
                continue;
            }
            nodes[id].closed = true;
            if level.is_solved_by(&nodes[id].boxes) {
                return Some(reconstruct(level, &nodes, id));
            }
            let boxes = nodes[id].boxes.clone();
            walk_distances(level, &boxes, nodes[id].player, &mut dist, &mut queue);
            for (slot, &b) in boxes.iter().enumerate() {
                for dir in DIRS {
                    let (Some(from), Some(to)) = (level.neighbor(b, dir.opposite()), level.neighbor(b, dir)) else {
                        continue;
                    };
                    if dist[from] == UNREACHED || level.is_wall(to) || boxes.binary_search(&to).is_ok() {
                        continue;
                    }
                    let new_cost = cost + dist[from] as usize + 1;
                    if new_cost > max_steps {
                        continue;
                    }
                    let mut next = boxes.to_vec();
                    next[slot] = to;
                    next.sort_unstable();
                    let solved = level.is_solved_by(&next);
                    if !solved && is_box_deadlocked(level, &next, to) {
                        continue;
                    }
                    let bound: usize = next.iter().map(|&x| target_dist[x] as usize).sum();
                    if new_cost + bound > max_steps {
                        continue;
                    }
                    let key = (next.into_boxed_slice(), b);
                    let candidate = Node {
                        boxes: key.0.clone(),
                        player: b,
                        cost: new_cost,
                        parent: Some(id),
                        push: Some((from, dir)),
                        closed: false,
                    };
                    match index.entry(key) {
                        Entry::Occupied(e) => {
                            let existing = &mut nodes[*e.get()];
                            if !existing.closed && new_cost < existing.cost {
                                *existing = candidate;
                                buckets[new_cost].push(*e.get());
                            }
                        }
                        Entry::Vacant(e) => {
                            nodes.push(candidate);
                            e.insert(nodes.len() - 1);
                            buckets[new_cost].push(nodes.len() - 1);
                        }
                    }
                }
            }
        }
    }
    None
}

/// BFS walking distances from `start` through cells free of walls and boxes.
fn walk_distances(level: &Level, boxes: &[usize], start: usize, dist: &mut [u16], queue: &mut VecDeque<usize>) {
    dist.fill(UNREACHED);
    queue.clear();
    dist[start] = 0;
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        for dir in DIRS {
            if let Some(n) = level.neighbor(c, dir) {
                if dist[n] == UNREACHED && !level.is_wall(n) && boxes.binary_search(&n).is_err() {
                    dist[n] = dist[c] + 1;
                    queue.push_back(n);
                }
            }
        }
    }
}

/// Walking path from `start` to `goal`, preferring directions in `DIRS` order.
fn walk_path(level: &Level, boxes: &[usize], start: usize, goal: usize) -> Vec<Dir> {
    let mut prev: Vec<Option<(usize, Dir)>> = vec![None; level.cells.len()];
    let mut seen = vec![false; level.cells.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(c) = queue.pop_front() {
        if c == goal {
            break;
        }
        for dir in DIRS {
            if let Some(n) = level.neighbor(c, dir) {
                if !seen[n] && !level.is_wall(n) && boxes.binary_search(&n).is_err() {
                    seen[n] = true;
                    prev[n] = Some((c, dir));
                    queue.push_back(n);
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = goal;
    while let Some((p, d)) = prev[cur] {
        path.push(d);
        cur = p;
    }
    path.reverse();
    path
}

/// Lower bound on pushes needed to bring a box from each cell to any target,
/// ignoring other boxes (reverse pull search from the targets).
fn push_distances(level: &Level) -> Vec<u16> {
    let mut dist = vec![UNREACHED; level.cells.len()];
    let mut queue = VecDeque::new();
    for &t in &level.targets {
        dist[t] = 0;
        queue.push_back(t);
    }
    while let Some(c) = queue.pop_front() {
        for dir in DIRS {
            // A box at `prev` pushed in `dir` lands on `c`; the player stands
            // one further back.
            let Some(prev) = level.neighbor(c, dir.opposite()) else { continue };
            let Some(stand) = level.neighbor(prev, dir.opposite()) else { continue };
            if dist[prev] == UNREACHED && !level.is_wall(prev) && !level.is_wall(stand) {
                dist[prev] = dist[c] + 1;
                queue.push_back(prev);
            }
        }
    }
    dist
}

fn reconstruct(level: &Level, nodes: &[Node], goal: usize) -> Vec<Dir> {
    let mut chain = Vec::new();
    let mut cur = goal;
    while let Some(parent) = nodes[cur].parent {
        chain.push(cur);
        cur = parent;
    }
    chain.reverse();
    let mut actions = Vec::new();
    let mut prev = cur;
    for id in chain {
        let (from, dir) = nodes[id].push.expect("non-root node has a push");
        actions.extend(walk_path(level, &nodes[prev].boxes, nodes[prev].player, from));
        actions.push(dir);
        prev = id;
    }
    actions
}
