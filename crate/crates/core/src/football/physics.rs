//! One-frame state transition.

use super::actions::{Action, PassKind};
use super::bots::BotPolicy;
use super::geometry::{point_segment_distance, Vec2, FIELD_X, GOAL_HALF_WIDTH};
use super::reward::{best_shot, s_move, s_oppo, s_pass, FrameEvents, RewardWeights};
use super::state::{Anchor, Flight, FootballState, Outcome, Sticky, Team, PLAYERS_PER_TEAM};

pub const SHOT_SPEED: f64 = 0.04;
/// An opponent this close to a ball in flight cuts it out.
pub const INTERCEPT_RADIUS: f64 = 0.015;
/// A teammate this close to a pass in flight collects it.
pub const RECEIVE_RADIUS: f64 = 0.02;
pub const KEEPER_REACH: f64 = 0.018;
/// Per-frame speed retention of a pass that has run past its target.
pub const ROLL_DECAY: f64 = 0.85;
/// Fraction of a high pass spent above head height.
pub const HIGH_PASS_AIRBORNE: f64 = 0.7;

impl PassKind {
    pub fn speed(self) -> f64 {
        match self {
            PassKind::Short => 0.022,
            PassKind::Long => 0.032,
            PassKind::High => 0.026,
        }
    }

    pub fn range(self) -> f64 {
        match self {
            PassKind::Short => 0.45,
            PassKind::Long | PassKind::High => 1.1,
        }
    }
}

/// Teammate a pass from the controlled player would go to: the one best
/// aligned with the movement direction (straight ahead when standing still)
/// among those in range.
pub fn select_receiver(state: &FootballState, kind: PassKind) -> Option<usize> {
    let holder = state.ball.holder.filter(|&h| h == state.controlled && !state.ball.in_flight)?;
    let from = state.players[holder].pos;
    let dir = if state.heading == Vec2::ZERO { Vec2::new(1.0, 0.0) } else { state.heading };
    let mut best: Option<(usize, f64, f64)> = None;
    for (i, p) in state.players[..PLAYERS_PER_TEAM].iter().enumerate() {
        if i == holder {
            continue;
        }
        let d = p.pos - from;
        let dist = d.norm();
        if dist < 0.03 || dist > kind.range() {
            continue;
        }
        let cos = dir.cos_angle(d);
        let better = match best {
            None => true,
            Some((_, bc, bd)) => cos > bc || (cos == bc && dist < bd),
        };
        if better {
            best = Some((i, cos, dist));
        }
    }
    best.map(|(i, _, _)| i)
}

fn apply_intent(s: &mut FootballState, action: Action, ev: &mut FrameEvents) -> bool {
    let c = s.controlled;
    match action {
        Action::Idle => {}
        Action::Move(d) => s.heading = d.unit(),
        Action::ReleaseDirection => s.heading = Vec2::ZERO,
        Action::Sprint => s.players[c].sticky.sprint = true,
        Action::ReleaseSprint => s.players[c].sticky.sprint = false,
        Action::Dribble => s.players[c].sticky.dribble = true,
        Action::ReleaseDribble => s.players[c].sticky.dribble = false,
        Action::Pass(kind) => {
            let Some(r) = select_receiver(s, kind) else { return false };
            let from = s.ball.pos;
            let target = s.players[r].pos;
            s.ball.vel = (target - from).unit() * kind.speed();
            s.ball.holder = None;
            s.ball.in_flight = true;
            s.ball.flight = Some(Flight::Pass { pass: kind, passer: c, receiver: r, target, launched: from });
            s.players[r].sticky = s.players[c].sticky;
            s.players[c].sticky = Sticky::default();
            s.controlled = r;
            return true;
        }
        Action::Shot => {
            if s.ball.holder != Some(c) {
                return false;
            }
            let opponents = s.opponent_positions();
            let (target, openness) = best_shot(s.ball.pos, &opponents);
            s.ball.vel = (target - s.ball.pos).unit() * SHOT_SPEED;
            s.ball.holder = None;
            s.ball.in_flight = true;
            s.ball.flight = Some(Flight::Shot { shooter: c, target });
            ev.shot_taken = Some(openness);
            return true;
        }
    }
    false
}

enum Resolution {
    Continue,
    Received(usize),
    Scored,
    Stolen(Option<usize>),
}

/// Closest player within its reach of the ball's path this frame.
fn first_touch(s: &FootballState, from: Vec2, to: Vec2, exclude: Option<usize>, ours_can_receive: bool) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, p) in s.players.iter().enumerate() {
        if Some(i) == exclude {
            continue;
        }
        let reach = match p.team {
            Team::Ours if !ours_can_receive => continue,
            Team::Ours => RECEIVE_RADIUS,
            Team::Opponent if i == PLAYERS_PER_TEAM => KEEPER_REACH,
            Team::Opponent => INTERCEPT_RADIUS,
        };
        let d = point_segment_distance(p.pos, from, to);
        if d <= reach && best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
}

fn advance_ball(s: &mut FootballState) -> Resolution {
    let from = s.ball.pos;
    let to = from + s.ball.vel;
    s.ball.pos = to;
    match s.ball.flight {
        Some(Flight::Pass { pass, passer, target, launched, .. }) => {
            let total = launched.dist(target).max(1e-9);
            let progress = launched.dist(to) / total;
            if progress >= 1.0 {
                s.ball.vel = s.ball.vel * ROLL_DECAY;
            }
            if !to.in_field() {
                return Resolution::Stolen(None);
            }
            if pass == PassKind::High && progress < HIGH_PASS_AIRBORNE {
                return Resolution::Continue;
            }
            match first_touch(s, from, to, Some(passer), true) {
                Some(i) if s.players[i].team == Team::Ours => Resolution::Received(i),
                Some(i) => Resolution::Stolen(Some(i)),
                None => Resolution::Continue,
            }
        }
        Some(Flight::Shot { .. }) => {
            if let Some(i) = first_touch(s, from, to, None, false) {
                return Resolution::Stolen(Some(i));
            }
            if to.x >= FIELD_X {
                let k = (FIELD_X - from.x) / (to.x - from.x);
                let y = from.y + k * (to.y - from.y);
                return if y.abs() <= GOAL_HALF_WIDTH { Resolution::Scored } else { Resolution::Stolen(None) };
            }
            if !to.in_field() {
                return Resolution::Stolen(None);
            }
            Resolution::Continue
        }
        None => Resolution::Continue,
    }
}

/// Advances the match by one frame with the controlled player performing
/// `action` and every other player following `bots`. Terminal states are
/// returned unchanged with empty events.
pub fn step(state: &FootballState, action: Action, bots: &dyn BotPolicy, w: &RewardWeights) -> (FootballState, FrameEvents) {
    let mut s = state.clone();
    if s.is_terminal() {
        return (s, FrameEvents { frame: state.frame, ..Default::default() });
    }
    s.frame += 1;
    let mut ev = FrameEvents { frame: s.frame, ..Default::default() };

    let launched = !s.ball.in_flight && apply_intent(&mut s, action, &mut ev);

    let snapshot = s.clone();
    for i in 0..s.players.len() {
        let v = if i == s.controlled && !s.ball.in_flight {
            s.heading * s.players[i].sticky.speed()
        } else {
            bots.velocity(&snapshot, i)
        };
        s.players[i].vel = v;
    }
    for i in 0..s.players.len() {
        let p = &mut s.players[i];
        p.pos += p.vel;
        if s.ball.holder != Some(i) {
            p.pos = p.pos.clamp_to_field();
        }
    }

    let mut resolution = Resolution::Continue;
    if let Some(h) = s.ball.holder {
        s.ball.pos = s.players[h].pos;
        s.ball.vel = s.players[h].vel;
        if !s.ball.pos.in_field() {
            resolution = Resolution::Stolen(None);
        } else {
            let reach = s.players[h].sticky.possession_radius();
            let tackler = (PLAYERS_PER_TEAM..s.players.len())
                .map(|i| (i, s.players[i].pos.dist(s.ball.pos)))
                .filter(|&(_, d)| d <= reach)
                .min_by(|a, b| a.1.total_cmp(&b.1));
            if let Some((i, _)) = tackler {
                resolution = Resolution::Stolen(Some(i));
            }
        }
    } else if !launched {
        resolution = advance_ball(&mut s);
    }

    match resolution {
        Resolution::Continue => {}
        Resolution::Received(i) => {
            let opponents = s.opponent_positions();
            ev.pass_received = Some(s_pass(s.players[i].pos, &opponents, w));
            s.ball.pos = s.players[i].pos;
            s.ball.vel = Vec2::ZERO;
            s.ball.holder = Some(i);
            s.ball.in_flight = false;
            s.ball.flight = None;
            s.controlled = i;
        }
        Resolution::Scored => {
            ev.scored = true;
            s.outcome = Some(Outcome::Scored);
        }
        Resolution::Stolen(by) => {
            ev.stolen = true;
            s.ball.holder = by;
            s.ball.in_flight = false;
            s.ball.flight = None;
            s.ball.vel = Vec2::ZERO;
            if let Some(i) = by {
                s.ball.pos = s.players[i].pos;
            }
            s.outcome = Some(Outcome::Stolen);
        }
    }

    let owned = !ev.stolen && (s.we_hold() || launched);
    let passed_now = s.passed();
    ev.owned = owned;
    ev.s_move = s_move(owned, s.ball.pos.x, s.anchor.ball_x);
    ev.s_oppo = s_oppo(owned, passed_now, s.anchor.passed);
    if owned {
        s.anchor = Anchor { frame: s.frame, ball_x: s.ball.pos.x, passed: passed_now };
    }
    if s.outcome.is_none() && s.frame >= w.horizon {
        ev.survived = true;
        s.outcome = Some(Outcome::Survived);
    }
    (s, ev)
}
