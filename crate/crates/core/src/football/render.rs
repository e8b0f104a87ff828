use super::geometry::{Vec2, FIELD_X, FIELD_Y, GOAL_HALF_WIDTH};
use super::state::{FootballState, Team};
use crate::raster::{Raster, Rgb};

/// Pixels per field unit.
pub const SCALE: f64 = 200.0;
const MARGIN: i64 = 8;

const PITCH: Rgb = [58, 142, 62];
const LINE: Rgb = [235, 235, 235];
const OURS: Rgb = [245, 215, 40];
const THEIRS: Rgb = [50, 80, 200];
const MARKER: Rgb = [220, 30, 30];
const BALL: Rgb = [255, 255, 255];
const OUTLINE: Rgb = [20, 20, 20];

fn px(p: Vec2) -> (i64, i64) {
    (MARGIN + ((p.x + FIELD_X) * SCALE).round() as i64, MARGIN + ((p.y + FIELD_Y) * SCALE).round() as i64)
}

/// Top-down view: our team in yellow attacking to the right, opponents in
/// blue, a red marker over the controlled player.
pub fn render(state: &FootballState) -> Raster {
    let w = (2.0 * FIELD_X * SCALE) as i64 + 2 * MARGIN;
    let h = (2.0 * FIELD_Y * SCALE) as i64 + 2 * MARGIN;
    let mut r = Raster::new(w as usize, h as usize, PITCH);
    let (x0, y0) = px(Vec2::new(-FIELD_X, -FIELD_Y));
    let (x1, y1) = px(Vec2::new(FIELD_X, FIELD_Y));
    r.fill_rect(x0, y0, x1 - x0 + 1, 1, LINE);
    r.fill_rect(x0, y1, x1 - x0 + 1, 1, LINE);
    r.fill_rect(x0, y0, 1, y1 - y0 + 1, LINE);
    r.fill_rect(x1, y0, 1, y1 - y0 + 1, LINE);
    let (cx, _) = px(Vec2::ZERO);
    r.fill_rect(cx, y0, 1, y1 - y0 + 1, LINE);
    let gh = (GOAL_HALF_WIDTH * SCALE).round() as i64;
    let (_, gy) = px(Vec2::ZERO);
    r.fill_rect(x0 - 4, gy - gh, 4, 2 * gh + 1, LINE);
    r.fill_rect(x1 + 1, gy - gh, 4, 2 * gh + 1, LINE);

    for (i, p) in state.players.iter().enumerate() {
        let (x, y) = px(p.pos);
        r.fill_circle(x, y, 4, OUTLINE);
        r.fill_circle(x, y, 3, if p.team == Team::Ours { OURS } else { THEIRS });
        if i == state.controlled {
            r.fill_rect(x - 2, y - 9, 5, 3, MARKER);
        }
    }
    let (bx, by) = px(state.ball.pos);
    r.fill_circle(bx, by, 2, OUTLINE);
    r.put(bx, by, BALL);
    r.put(bx + 1, by, BALL);
    r.put(bx, by + 1, BALL);
    r
}
