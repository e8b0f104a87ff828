//! A scripted player that reads the privileged state; used for self-play
//! and as a non-trivial baseline.

use super::actions::{Action, Direction, PassKind};
use super::geometry::{opponent_goal, point_segment_distance, Vec2, FIELD_X, FIELD_Y};
use super::reward::s_shot;
use super::physics::select_receiver;
use super::state::{FootballState, BASE_SPEED, PLAYERS_PER_TEAM};
use crate::harness::{Agent, AgentError, DecisionRequest};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BotController {
    /// Opponent distance that triggers a pass.
    pub pressure: f64,
    /// Frames of running simulated when comparing directions.
    pub horizon: usize,
    /// Assumed closing speed of opponents.
    pub chase_speed: f64,
    /// Shoot from inside this distance of the goal.
    pub shooting_range: f64,
    /// Smallest shot openness worth shooting with.
    pub min_shot: f64,
}

impl Default for BotController {
    fn default() -> Self {
        BotController { pressure: 0.07, horizon: 8, chase_speed: 0.9 * BASE_SPEED, shooting_range: 0.32, min_shot: 0.012 }
    }
}

impl BotController {
    /// Progress toward goal plus the worst-case clearance from opponents
    /// over the next `horizon` frames of running in direction `d`.
    fn run_score(&self, s: &FootballState, me: Vec2, d: Direction) -> f64 {
        let u = d.unit();
        let speed = s.players[s.controlled].sticky.speed();
        let mut clearance = f64::INFINITY;
        for k in 1..=self.horizon {
            let kf = k as f64;
            let p = me + u * (speed * kf);
            if p.x.abs() > FIELD_X - 0.02 || p.y.abs() > FIELD_Y - 0.02 {
                return f64::NEG_INFINITY;
            }
            for o in s.opponents() {
                clearance = clearance.min(o.pos.dist(p) - self.chase_speed * kf);
            }
        }
        let danger = if clearance < 0.03 { 2.0 + 20.0 * (0.03 - clearance) } else { 0.0 };
        u.dot((opponent_goal() - me).unit()) + 4.0 * clearance.min(0.1) - danger
    }

    fn open_receiver(&self, s: &FootballState, me: Vec2) -> Option<usize> {
        (0..PLAYERS_PER_TEAM)
            .filter(|&i| i != s.controlled && i != 0)
            .filter(|&i| {
                let p = s.players[i].pos;
                let d = p.dist(me);
                (0.08..=PassKind::Short.range()).contains(&d)
                    && p.x > me.x - 0.05
                    && s.opponents().all(|o| point_segment_distance(o.pos, me, p) > 0.04)
            })
            .max_by(|&a, &b| s.players[a].pos.x.total_cmp(&s.players[b].pos.x))
    }

    pub fn decide(&self, s: &FootballState) -> Action {
        if s.ball.in_flight || s.ball.holder != Some(s.controlled) {
            return Action::Idle;
        }
        let me = s.players[s.controlled].pos;
        if me.dist(opponent_goal()) < self.shooting_range && s_shot(me, &s.opponent_positions()) >= self.min_shot {
            return Action::Shot;
        }
        let current = (s.heading != Vec2::ZERO).then(|| Direction::nearest(s.heading));
        if s.nearest_opponent_distance().is_some_and(|d| d < self.pressure) {
            if let Some(r) = self.open_receiver(s, me) {
                let want = Direction::nearest(s.players[r].pos - me);
                if current == Some(want) && select_receiver(s, PassKind::Short) == Some(r) {
                    return Action::Pass(PassKind::Short);
                }
                return Action::Move(want);
            }
        }
        let mut best = Direction::Right;
        let mut best_score = f64::NEG_INFINITY;
        for d in Direction::ALL {
            let v = self.run_score(s, me, d);
            if v > best_score {
                best_score = v;
                best = d;
            }
        }
        if let Some(c) = current {
            if self.run_score(s, me, c) >= best_score - 0.1 {
                return Action::Move(c);
            }
        }
        Action::Move(best)
    }
}

impl Agent<FootballState> for BotController {
    fn act(&mut self, request: &DecisionRequest<'_, FootballState>) -> Result<String, AgentError> {
        Ok(format!("# analyze\nscripted\n# action\n{}", self.decide(request.state)))
    }
}
