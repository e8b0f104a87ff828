//! Built-in policies for the 21 players the agent does not control.

use super::geometry::{Vec2, FIELD_X};
use super::state::{Flight, FootballState, Team, BASE_SPEED, PLAYERS_PER_TEAM};

/// Decides the velocity of every player other than the controlled one.
/// Implementations must be deterministic functions of the state.
pub trait BotPolicy: Send + Sync {
    fn velocity(&self, state: &FootballState, player: usize) -> Vec2;
}

/// Opponents press the ball with their two nearest players and otherwise
/// shift toward it; teammates follow the play up the pitch; the intended
/// receiver of a pass runs onto the ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicBots {
    pub chase_speed: f64,
    pub shift_speed: f64,
    pub support_speed: f64,
    pub keeper_speed: f64,
    /// Opponents pressing the ball at once.
    pub chasers: usize,
}

impl Default for HeuristicBots {
    fn default() -> Self {
        HeuristicBots {
            chase_speed: 0.9 * BASE_SPEED,
            shift_speed: 0.45 * BASE_SPEED,
            support_speed: 0.6 * BASE_SPEED,
            keeper_speed: 1.2 * BASE_SPEED,
            chasers: 1,
        }
    }
}

fn toward(from: Vec2, to: Vec2, speed: f64) -> Vec2 {
    let d = to - from;
    let n = d.norm();
    if n <= speed {
        d
    } else {
        d * (speed / n)
    }
}

/// Where a chaser should head to meet a target moving at constant velocity.
fn lead_point(chaser: Vec2, target: Vec2, target_vel: Vec2, speed: f64) -> Vec2 {
    let frames = (chaser.dist(target) / speed).min(15.0);
    target + target_vel * frames
}

impl HeuristicBots {
    fn is_chaser(&self, state: &FootballState, player: usize) -> bool {
        let ball = state.ball.pos;
        let mine = state.players[player].pos.dist(ball);
        let closer = state.players[PLAYERS_PER_TEAM + 1..]
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                let d = p.pos.dist(ball);
                d < mine || (d == mine && i + PLAYERS_PER_TEAM + 1 < player)
            })
            .count();
        closer < self.chasers
    }

    fn ball_velocity(state: &FootballState) -> Vec2 {
        match state.ball.holder {
            Some(h) => state.players[h].vel,
            None => state.ball.vel,
        }
    }

    fn opponent(&self, state: &FootballState, player: usize) -> Vec2 {
        let me = state.players[player];
        let ball = state.ball.pos;
        if player == PLAYERS_PER_TEAM {
            // The keeper is set before a shot and does not react to it.
            if matches!(state.ball.flight, Some(Flight::Shot { .. })) {
                return Vec2::ZERO;
            }
            let y = (ball.y * 0.3).clamp(-0.03, 0.03);
            return toward(me.pos, Vec2::new(FIELD_X - 0.03, y), self.keeper_speed);
        }
        if self.is_chaser(state, player) {
            let aim = lead_point(me.pos, ball, Self::ball_velocity(state), self.chase_speed);
            return toward(me.pos, aim, self.chase_speed);
        }
        let spot = me.home + (ball - me.home) * 0.25;
        toward(me.pos, spot, self.shift_speed)
    }

    fn teammate(&self, state: &FootballState, player: usize) -> Vec2 {
        let me = state.players[player];
        if let Some(Flight::Pass { receiver, .. }) = state.ball.flight {
            if receiver == player {
                return toward(me.pos, state.ball.pos, BASE_SPEED);
            }
        }
        if player == 0 {
            return toward(me.pos, me.home, self.support_speed);
        }
        let ball = state.ball.pos;
        let spot = Vec2::new(me.home.x + 0.6 * (ball.x - me.home.x).max(0.0), me.home.y).clamp_to_field();
        toward(me.pos, spot, self.support_speed)
    }
}

impl BotPolicy for HeuristicBots {
    fn velocity(&self, state: &FootballState, player: usize) -> Vec2 {
        match state.players[player].team {
            Team::Opponent => self.opponent(state, player),
            Team::Ours => self.teammate(state, player),
        }
    }
}
