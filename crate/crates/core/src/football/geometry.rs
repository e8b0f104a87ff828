use std::ops::{Add, AddAssign, Mul, Sub};

use serde::{Deserialize, Serialize};

/// Pitch half-length; x runs from our goal at -1 to theirs at +1.
pub const FIELD_X: f64 = 1.0;
/// Pitch half-width.
pub const FIELD_Y: f64 = 0.42;
/// Half-width of the goal mouth.
pub const GOAL_HALF_WIDTH: f64 = 0.044;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Unit vector, or zero for the zero vector.
    pub fn unit(self) -> Vec2 {
        let n = self.norm();
        if n > 0.0 {
            self * (1.0 / n)
        } else {
            Vec2::ZERO
        }
    }

    /// Cosine of the angle between two vectors; 0 if either is zero.
    pub fn cos_angle(self, o: Vec2) -> f64 {
        let d = self.norm() * o.norm();
        if d > 0.0 {
            (self.dot(o) / d).clamp(-1.0, 1.0)
        } else {
            0.0
        }
    }

    pub fn in_field(self) -> bool {
        self.x.abs() <= FIELD_X && self.y.abs() <= FIELD_Y
    }

    pub fn clamp_to_field(self) -> Vec2 {
        Vec2::new(self.x.clamp(-FIELD_X, FIELD_X), self.y.clamp(-FIELD_Y, FIELD_Y))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

/// Distance from `p` to the segment `a`-`b`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Centre of the opponent goal.
pub fn opponent_goal() -> Vec2 {
    Vec2::new(FIELD_X, 0.0)
}

/// The five aiming points spread evenly across the opponent goal mouth.
pub fn goal_targets() -> [Vec2; 5] {
    let step = GOAL_HALF_WIDTH * 0.8 / 2.0;
    [-2.0, -1.0, 0.0, 1.0, 2.0].map(|k| Vec2::new(FIELD_X, k * step))
}
