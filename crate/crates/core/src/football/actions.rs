use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::geometry::Vec2;

/// The full football action vocabulary, in canonical order.
pub const ACTIONS: [&str; 18] = [
    "action_idle",
    "action_left",
    "action_top_left",
    "action_top",
    "action_top_right",
    "action_right",
    "action_bottom_right",
    "action_bottom",
    "action_bottom_left",
    "action_long_pass",
    "action_high_pass",
    "action_short_pass",
    "action_shot",
    "action_sprint",
    "action_release_direction",
    "action_release_sprint",
    "action_dribble",
    "action_release_dribble",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    TopLeft,
    Top,
    TopRight,
    Right,
    BottomRight,
    Bottom,
    BottomLeft,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::Left,
        Direction::TopLeft,
        Direction::Top,
        Direction::TopRight,
        Direction::Right,
        Direction::BottomRight,
        Direction::Bottom,
        Direction::BottomLeft,
    ];

    /// Unit vector in field coordinates; "top" is negative y, as on screen.
    pub fn unit(self) -> Vec2 {
        let d = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Direction::Left => Vec2::new(-1.0, 0.0),
            Direction::TopLeft => Vec2::new(-d, -d),
            Direction::Top => Vec2::new(0.0, -1.0),
            Direction::TopRight => Vec2::new(d, -d),
            Direction::Right => Vec2::new(1.0, 0.0),
            Direction::BottomRight => Vec2::new(d, d),
            Direction::Bottom => Vec2::new(0.0, 1.0),
            Direction::BottomLeft => Vec2::new(-d, d),
        }
    }

    /// The direction whose unit vector is closest to `v`.
    pub fn nearest(v: Vec2) -> Direction {
        let mut best = Direction::Right;
        let mut best_dot = f64::NEG_INFINITY;
        for d in Direction::ALL {
            let dot = d.unit().dot(v);
            if dot > best_dot {
                best_dot = dot;
                best = d;
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PassKind {
    Short,
    Long,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Idle,
    Move(Direction),
    Pass(PassKind),
    Shot,
    Sprint,
    ReleaseDirection,
    ReleaseSprint,
    Dribble,
    ReleaseDribble,
}

impl Action {
    pub fn token(self) -> &'static str {
        match self {
            Action::Idle => ACTIONS[0],
            Action::Move(d) => ACTIONS[1 + Direction::ALL.iter().position(|x| *x == d).expect("listed")],
            Action::Pass(PassKind::Long) => ACTIONS[9],
            Action::Pass(PassKind::High) => ACTIONS[10],
            Action::Pass(PassKind::Short) => ACTIONS[11],
            Action::Shot => ACTIONS[12],
            Action::Sprint => ACTIONS[13],
            Action::ReleaseDirection => ACTIONS[14],
            Action::ReleaseSprint => ACTIONS[15],
            Action::Dribble => ACTIONS[16],
            Action::ReleaseDribble => ACTIONS[17],
        }
    }

    pub fn direction(self) -> Option<Direction> {
        match self {
            Action::Move(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAction(pub String);

impl fmt::Display for UnknownAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown football action {:?}", self.0)
    }
}

impl std::error::Error for UnknownAction {}

impl FromStr for Action {
    type Err = UnknownAction;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let idx = ACTIONS
            .iter()
            .position(|a| a.eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownAction(s.to_string()))?;
        Ok(match idx {
            0 => Action::Idle,
            1..=8 => Action::Move(Direction::ALL[idx - 1]),
            9 => Action::Pass(PassKind::Long),
            10 => Action::Pass(PassKind::High),
            11 => Action::Pass(PassKind::Short),
            12 => Action::Shot,
            13 => Action::Sprint,
            14 => Action::ReleaseDirection,
            15 => Action::ReleaseSprint,
            16 => Action::Dribble,
            _ => Action::ReleaseDribble,
        })
    }
}
