use super::level::{Dir, Level};
use super::state::SokobanState;

/// True when some box can provably never reach a target.
///
/// Detects corner deadlocks, boxes stuck on a wall run with no target and
/// no escape gap, and 2x2 blocks of walls and boxes holding an unplaced box.
/// This is sound but not complete.
pub fn is_deadlock(state: &SokobanState) -> bool {
    state.boxes.iter().any(|&b| is_box_deadlocked(&state.level, &state.boxes, b))
}

/// Deadlock check restricted to patterns involving the box at `b`.
pub fn is_box_deadlocked(level: &Level, boxes: &[usize], b: usize) -> bool {
    if !level.is_target(b) && (in_corner(level, b) || on_dead_wall_line(level, b)) {
        return true;
    }
    frozen_square(level, boxes, b)
}

fn in_corner(level: &Level, b: usize) -> bool {
    let vertical = level.is_wall_toward(b, Dir::Up) || level.is_wall_toward(b, Dir::Down);
    let horizontal = level.is_wall_toward(b, Dir::Left) || level.is_wall_toward(b, Dir::Right);
    vertical && horizontal
}

fn on_dead_wall_line(level: &Level, b: usize) -> bool {
    [
        (Dir::Up, [Dir::Left, Dir::Right]),
        (Dir::Down, [Dir::Left, Dir::Right]),
        (Dir::Left, [Dir::Up, Dir::Down]),
        (Dir::Right, [Dir::Up, Dir::Down]),
    ]
    .into_iter()
    .any(|(side, along)| level.is_wall_toward(b, side) && dead_run(level, b, side, along))
}

/// Walks the run containing `b` in both `along` directions. The run is dead
/// when every cell has a wall on `side` and none is a target.
fn dead_run(level: &Level, b: usize, side: Dir, along: [Dir; 2]) -> bool {
    for dir in along {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if level.is_wall(c) {
                break;
            }
            if level.is_target(c) || !level.is_wall_toward(c, side) {
                return false;
            }
            cur = level.neighbor(c, dir);
        }
    }
    true
}

fn frozen_square(level: &Level, boxes: &[usize], b: usize) -> bool {
    let blocked = |idx: Option<usize>| match idx {
        None => true,
        Some(i) => level.is_wall(i) || boxes.binary_search(&i).is_ok(),
    };
    let is_unplaced_box = |idx: Option<usize>| {
        idx.is_some_and(|i| boxes.binary_search(&i).is_ok() && !level.is_target(i))
    };
    // The four 2x2 squares having `b` as one corner.
    for (dv, dh) in [(Dir::Up, Dir::Left), (Dir::Up, Dir::Right), (Dir::Down, Dir::Left), (Dir::Down, Dir::Right)] {
        let v = level.neighbor(b, dv);
        let h = level.neighbor(b, dh);
        let d = v.and_then(|x| level.neighbor(x, dh));
        let square = [Some(b), v, h, d];
        if square.iter().all(|&c| blocked(c)) && square.iter().any(|&c| is_unplaced_box(c)) {
            return true;
        }
    }
    false
}
