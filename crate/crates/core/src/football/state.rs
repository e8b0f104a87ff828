use serde::{Deserialize, Serialize};

use super::actions::PassKind;
use super::geometry::Vec2;

pub const PLAYERS_PER_TEAM: usize = 11;
/// Frame horizon of one episode.
pub const HORIZON: usize = 400;

/// Controlled-player speed in field units per frame.
pub const BASE_SPEED: f64 = 0.008;
pub const SPRINT_SPEED_FACTOR: f64 = 1.4;
pub const SPRINT_RADIUS_FACTOR: f64 = 1.3;
pub const DRIBBLE_SPEED_FACTOR: f64 = 0.7;
pub const DRIBBLE_RADIUS_FACTOR: f64 = 0.7;
/// An opponent this close to the holder wins the ball.
pub const POSSESSION_RADIUS: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Team {
    Ours,
    Opponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Sticky {
    pub sprint: bool,
    pub dribble: bool,
}

impl Sticky {
    pub fn speed(self) -> f64 {
        let mut s = BASE_SPEED;
        if self.sprint {
            s *= SPRINT_SPEED_FACTOR;
        }
        if self.dribble {
            s *= DRIBBLE_SPEED_FACTOR;
        }
        s
    }

    pub fn possession_radius(self) -> f64 {
        let mut r = POSSESSION_RADIUS;
        if self.sprint {
            r *= SPRINT_RADIUS_FACTOR;
        }
        if self.dribble {
            r *= DRIBBLE_RADIUS_FACTOR;
        }
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Player {
    pub team: Team,
    pub pos: Vec2,
    pub vel: Vec2,
    pub sticky: Sticky,
    /// Formation anchor the bots drift around.
    pub home: Vec2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flight {
    Pass { pass: PassKind, passer: usize, receiver: usize, target: Vec2, launched: Vec2 },
    Shot { shooter: usize, target: Vec2 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub pos: Vec2,
    pub vel: Vec2,
    pub holder: Option<usize>,
    pub in_flight: bool,
    pub flight: Option<Flight>,
}

/// Snapshot of the last frame our team owned the ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub frame: usize,
    pub ball_x: f64,
    pub passed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Scored,
    /// Interception, tackle, ball out of play or a saved shot.
    Stolen,
    /// Possession kept until the frame horizon.
    Survived,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FootballState {
    /// Indices `0..11` are our team (0 is the goalkeeper), `11..22` the
    /// opponents (11 is their goalkeeper).
    pub players: Vec<Player>,
    pub ball: Ball,
    pub controlled: usize,
    pub frame: usize,
    pub anchor: Anchor,
    /// Sticky movement direction of the controlled player (zero when released).
    pub heading: Vec2,
    pub outcome: Option<Outcome>,
}

impl FootballState {
    /// Initial state with `holder` in possession.
    pub fn kickoff(players: Vec<Player>, holder: usize) -> Self {
        assert_eq!(players.len(), 2 * PLAYERS_PER_TEAM, "22 players");
        assert_eq!(players[holder].team, Team::Ours, "our team starts with the ball");
        let pos = players[holder].pos;
        let mut s = FootballState {
            players,
            ball: Ball { pos, vel: Vec2::ZERO, holder: Some(holder), in_flight: false, flight: None },
            controlled: holder,
            frame: 0,
            anchor: Anchor { frame: 0, ball_x: pos.x, passed: 0 },
            heading: Vec2::ZERO,
            outcome: None,
        };
        s.anchor.passed = s.passed();
        s
    }

    pub fn last_owned_frame(&self) -> usize {
        self.anchor.frame
    }

    pub fn is_terminal(&self) -> bool {
        self.outcome.is_some()
    }

    pub fn opponents(&self) -> impl Iterator<Item = &Player> {
        self.players[PLAYERS_PER_TEAM..].iter()
    }

    pub fn teammates(&self) -> impl Iterator<Item = &Player> {
        self.players[..PLAYERS_PER_TEAM].iter()
    }

    pub fn opponent_positions(&self) -> Vec<Vec2> {
        self.opponents().map(|p| p.pos).collect()
    }

    /// Opponents strictly behind the ball along x.
    pub fn passed(&self) -> usize {
        passed(self.opponents().map(|p| p.pos.x), self.ball.pos.x)
    }

    /// True when one of our players holds the ball.
    pub fn we_hold(&self) -> bool {
        self.ball.holder.is_some_and(|h| self.players[h].team == Team::Ours)
    }

    pub fn holder_pos(&self) -> Option<Vec2> {
        self.ball.holder.map(|h| self.players[h].pos)
    }

    /// Distance from the holder to the nearest opponent.
    pub fn nearest_opponent_distance(&self) -> Option<f64> {
        let h = self.holder_pos()?;
        self.opponents().map(|p| p.pos.dist(h)).min_by(f64::total_cmp)
    }
}

/// Number of opponent x-coordinates strictly less than `ball_x`.
pub fn passed(opponent_xs: impl IntoIterator<Item = f64>, ball_x: f64) -> usize {
    opponent_xs.into_iter().filter(|&x| x < ball_x).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sticky_factors() {
        let none = Sticky::default();
        let sprint = Sticky { sprint: true, dribble: false };
        let dribble = Sticky { sprint: false, dribble: true };
        assert_eq!(none.speed(), BASE_SPEED);
        assert!(sprint.speed() > none.speed() && dribble.speed() < none.speed());
        assert!(sprint.possession_radius() > none.possession_radius());
        assert!(dribble.possession_radius() < none.possession_radius());
    }

    #[test]
    fn passed_counts_strictly_behind() {
        assert_eq!(passed([0.1, 0.2, 0.3, 0.5], 0.3), 2);
        assert_eq!(passed([], 0.0), 0);
    }
}
