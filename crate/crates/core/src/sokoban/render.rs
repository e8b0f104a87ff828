use crate::raster::{Raster, Rgb};

use super::level::Cell;
use super::state::SokobanState;

/// Tile edge in pixels.
pub const TILE: usize = 16;

const FLOOR: Rgb = [24, 24, 24];
const BRICK: Rgb = [150, 48, 36];
const MORTAR: Rgb = [96, 90, 84];
const TARGET_DOT: Rgb = [220, 30, 30];
const BOX: Rgb = [230, 200, 40];
const BOX_EDGE: Rgb = [150, 110, 20];
const PLAYER: Rgb = [40, 200, 70];

/// Tile rendering: red-brick walls, yellow boxes, red-dot targets and a
/// green player.
pub fn render(state: &SokobanState) -> Raster {
    let level = &*state.level;
    let mut img = Raster::new(level.width * TILE, level.height * TILE, FLOOR);
    let t = TILE as i64;
    for idx in 0..level.cells.len() {
        let (r, c) = level.coords(idx);
        let (x, y) = (c as i64 * t, r as i64 * t);
        match level.cells[idx] {
            Cell::Wall => draw_brick(&mut img, x, y),
            Cell::Target => img.fill_circle(x + t / 2, y + t / 2, t / 6, TARGET_DOT),
            Cell::Floor => {}
        }
        if state.has_box(idx) {
            img.fill_rect(x + 1, y + 1, t - 2, t - 2, BOX_EDGE);
            img.fill_rect(x + 3, y + 3, t - 6, t - 6, BOX);
            if level.is_target(idx) {
                img.fill_circle(x + t / 2, y + t / 2, t / 6, TARGET_DOT);
            }
        }
        if idx == state.player {
            img.fill_circle(x + t / 2, y + t / 2, t / 3, PLAYER);
        }
    }
    img
}

fn draw_brick(img: &mut Raster, x: i64, y: i64) {
    let t = TILE as i64;
    img.fill_rect(x, y, t, t, MORTAR);
    let course = t / 4;
    for row in 0..4 {
        let offset = if row % 2 == 0 { 0 } else { t / 4 };
        let by = y + row * course;
        let mut bx = x - offset;
        while bx < x + t {
            let left = bx.max(x);
            let right = (bx + t / 2 - 1).min(x + t);
            img.fill_rect(left, by, right - left, course - 1, BRICK);
            bx += t / 2;
        }
    }
}
