use std::sync::Arc;

use super::level::{Dir, Level};

/// What happened during one step. At most one of the push flags is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepEvents {
    pub moved: bool,
    pub pushed: bool,
    pub push_to_target: bool,
    pub push_off_target: bool,
    /// The step placed the last box on its target.
    pub completed: bool,
}

/// Immutable game state; [`SokobanState::step`] returns a new value.
#[derive(Debug, Clone, PartialEq)]
pub struct SokobanState {
    pub level: Arc<Level>,
    pub boxes: Vec<usize>,
    pub player: usize,
    pub steps_taken: usize,
    pub done: bool,
}

impl SokobanState {
    pub fn initial(level: Arc<Level>) -> Self {
        let done = level.is_solved_by(&level.boxes);
        SokobanState {
            boxes: level.boxes.clone(),
            player: level.player,
            steps_taken: 0,
            done,
            level,
        }
    }

    pub fn has_box(&self, idx: usize) -> bool {
        self.boxes.binary_search(&idx).is_ok()
    }

    /// Applies one move. Blocked moves leave positions untouched but still
    /// consume a step.
    pub fn step(&self, dir: Dir) -> (SokobanState, StepEvents) {
        let level = &*self.level;
        let mut next = self.clone();
        next.steps_taken += 1;
        let mut events = StepEvents::default();
        if self.done {
            return (next, events);
        }
        let Some(dest) = level.neighbor(self.player, dir) else {
            return (next, events);
        };
        if level.is_wall(dest) {
            return (next, events);
        }
        if self.has_box(dest) {
            let Some(beyond) = level.neighbor(dest, dir) else {
                return (next, events);
            };
            if level.is_wall(beyond) || self.has_box(beyond) {
                return (next, events);
            }
            let slot = next.boxes.binary_search(&dest).expect("box present");
            next.boxes[slot] = beyond;
            next.boxes.sort_unstable();
            events.pushed = true;
            let was_on = level.is_target(dest);
            let now_on = level.is_target(beyond);
            events.push_to_target = !was_on && now_on;
            events.push_off_target = was_on && !now_on;
        }
        next.player = dest;
        events.moved = true;
        if level.is_solved_by(&next.boxes) {
            next.done = true;
            events.completed = true;
        }
        (next, events)
    }

    pub fn grid_text(&self) -> String {
        self.level.grid_text(&self.boxes, self.player)
    }
}
