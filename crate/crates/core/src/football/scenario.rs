//! Initial scenes: a 3×3 grid of field regions crossed with three
//! categories, four scenes each.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::geometry::{point_segment_distance, Vec2, FIELD_X, FIELD_Y};
use super::state::{FootballState, Player, Sticky, Team, PLAYERS_PER_TEAM};

/// A passing lane with an opponent closer than this is closed.
pub const LANE_BUFFER: f64 = 0.05;
/// Minimum initial gap between the ball holder and any opponent.
pub const START_CLEARANCE: f64 = 0.06;
pub const SCENES_PER_CELL: usize = 4;
pub const SCENARIO_COUNT: usize = 3 * 9 * SCENES_PER_CELL;
const ATTEMPTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Personal,
    Teamwork,
    RealWorld,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Personal, Category::Teamwork, Category::RealWorld];

    pub fn slug(self) -> &'static str {
        match self {
            Category::Personal => "personal",
            Category::Teamwork => "teamwork",
            Category::RealWorld => "realworld",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Category {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "personal" => Ok(Category::Personal),
            "teamwork" => Ok(Category::Teamwork),
            "realworld" => Ok(Category::RealWorld),
            _ => Err(format!("unknown scenario category {s:?}")),
        }
    }
}

/// Field region `R1`..`R9`. Regions run column by column from our goal:
/// R1-R3 are our third (top, centre, bottom), R4-R6 the middle third and
/// R7-R9 the attacking third.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Region(u8);

impl Region {
    pub fn new(n: u8) -> Option<Region> {
        (1..=9).contains(&n).then_some(Region(n))
    }

    pub fn all() -> impl Iterator<Item = Region> {
        (1..=9).map(Region)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// `(x_min, x_max, y_min, y_max)`.
    pub fn bounds(self) -> (f64, f64, f64, f64) {
        let col = f64::from((self.0 - 1) / 3);
        let row = f64::from((self.0 - 1) % 3);
        let w = 2.0 * FIELD_X / 3.0;
        let h = 2.0 * FIELD_Y / 3.0;
        let x0 = -FIELD_X + col * w;
        let y0 = -FIELD_Y + row * h;
        (x0, x0 + w, y0, y0 + h)
    }

    pub fn contains(self, p: Vec2) -> bool {
        let (x0, x1, y0, y1) = self.bounds();
        p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1
    }

    pub fn center(self) -> Vec2 {
        let (x0, x1, y0, y1) = self.bounds();
        Vec2::new((x0 + x1) / 2.0, (y0 + y1) / 2.0)
    }
}

impl TryFrom<u8> for Region {
    type Error = String;
    fn try_from(n: u8) -> Result<Self, String> {
        Region::new(n).ok_or_else(|| format!("region {n} outside 1..=9"))
    }
}

impl From<Region> for u8 {
    fn from(r: Region) -> u8 {
        r.0
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.0)
    }
}

impl FromStr for Region {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let digits = s.trim().trim_start_matches(['R', 'r']);
        let n: u8 = digits.parse().map_err(|_| format!("bad region {s:?}"))?;
        Region::try_from(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub team: Team,
    pub x: f64,
    pub y: f64,
}

impl Placement {
    pub fn pos(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// An initial scene. Players `0..11` are ours (0 in goal), `11..22` the
/// opponents (11 in goal).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub category: Category,
    pub region: Region,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub holder: usize,
    pub ball: [f64; 2],
    pub players: Vec<Placement>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioError {
    #[error("expected 22 players, found {0}")]
    PlayerCount(usize),
    #[error("player {0} is on the wrong team")]
    TeamOrder(usize),
    #[error("player {0} is off the field")]
    OffField(usize),
    #[error("holder {0} is not one of our players")]
    Holder(usize),
    #[error("ball is not at the holder's feet")]
    BallDetached,
    #[error("holder is outside {0}")]
    WrongRegion(Region),
    #[error("no valid {category} scene for {region} within the attempt budget")]
    Exhausted { category: Category, region: Region },
    #[error("no fixture for {region} #{index}")]
    MissingFixture { region: Region, index: usize },
    #[error("malformed scenario file: {0}")]
    Parse(String),
}

impl Scenario {
    pub fn holder_pos(&self) -> Vec2 {
        self.players[self.holder].pos()
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.players.len() != 2 * PLAYERS_PER_TEAM {
            return Err(ScenarioError::PlayerCount(self.players.len()));
        }
        for (i, p) in self.players.iter().enumerate() {
            let expected = if i < PLAYERS_PER_TEAM { Team::Ours } else { Team::Opponent };
            if p.team != expected {
                return Err(ScenarioError::TeamOrder(i));
            }
            if !p.pos().in_field() {
                return Err(ScenarioError::OffField(i));
            }
        }
        if self.holder >= PLAYERS_PER_TEAM {
            return Err(ScenarioError::Holder(self.holder));
        }
        let h = self.holder_pos();
        if h.dist(Vec2::new(self.ball[0], self.ball[1])) > 1e-9 {
            return Err(ScenarioError::BallDetached);
        }
        if !self.region.contains(h) {
            return Err(ScenarioError::WrongRegion(self.region));
        }
        Ok(())
    }

    pub fn opponents(&self) -> Vec<Vec2> {
        self.players[PLAYERS_PER_TEAM..].iter().map(Placement::pos).collect()
    }

    /// Whether the lane from the holder to teammate `mate` is free of
    /// opponents within [`LANE_BUFFER`].
    pub fn lane_open(&self, mate: usize) -> bool {
        let a = self.holder_pos();
        let b = self.players[mate].pos();
        self.opponents().iter().all(|&o| point_segment_distance(o, a, b) >= LANE_BUFFER)
    }

    pub fn open_lanes(&self) -> Vec<usize> {
        (0..PLAYERS_PER_TEAM).filter(|&i| i != self.holder && self.lane_open(i)).collect()
    }

    pub fn to_state(&self) -> FootballState {
        let players = self
            .players
            .iter()
            .map(|p| Player { team: p.team, pos: p.pos(), vel: Vec2::ZERO, sticky: Sticky::default(), home: p.pos() })
            .collect();
        FootballState::kickoff(players, self.holder)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn from_json(text: &str) -> Result<Scenario, ScenarioError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }
}

pub fn scenario_id(category: Category, region: Region, index: usize) -> String {
    format!("{}-r{}-{}", category.slug(), region.number(), index)
}

// Our 4-4-2 shape as offsets from the holder's x, and the opponents' as
// offsets from their back line.
const OUR_SHAPE: [(f64, f64); 10] = [
    (-0.45, -0.26),
    (-0.45, -0.09),
    (-0.45, 0.09),
    (-0.45, 0.26),
    (-0.15, -0.28),
    (-0.15, -0.09),
    (-0.15, 0.09),
    (-0.15, 0.28),
    (0.15, -0.1),
    (0.15, 0.1),
];
const THEIR_SHAPE: [(f64, f64); 10] = [
    (0.0, -0.24),
    (0.0, -0.08),
    (0.0, 0.08),
    (0.0, 0.24),
    (-0.22, -0.27),
    (-0.22, -0.09),
    (-0.22, 0.09),
    (-0.22, 0.27),
    (-0.45, -0.1),
    (-0.45, 0.1),
];

fn jitter(rng: &mut ChaCha8Rng, scale: f64) -> f64 {
    rng.gen_range(-scale..=scale)
}

fn inside(p: Vec2, margin: f64) -> Vec2 {
    Vec2::new(p.x.clamp(-FIELD_X + margin, FIELD_X - margin), p.y.clamp(-FIELD_Y + margin, FIELD_Y - margin))
}

/// Pushes `p` directly away from `from` until it is at least `gap` away.
fn push_clear(p: Vec2, from: Vec2, gap: f64) -> Vec2 {
    let d = p - from;
    if d.norm() >= gap {
        return p;
    }
    let dir = if d.norm() > 0.0 { d.unit() } else { Vec2::new(1.0, 0.0) };
    inside(from + dir * gap, 0.01)
}

fn base_layout(rng: &mut ChaCha8Rng, region: Region) -> (Vec<Vec2>, usize) {
    let (x0, x1, y0, y1) = region.bounds();
    let m = 0.04;
    let holder = Vec2::new(rng.gen_range(x0 + m..x1 - m), rng.gen_range(y0 + m..y1 - m));
    let mut ours = vec![Vec2::new(-0.95, jitter(rng, 0.02))];
    for (dx, y) in OUR_SHAPE {
        let x = (holder.x + dx + jitter(rng, 0.05)).clamp(-0.85, 0.9);
        ours.push(inside(Vec2::new(x, y + jitter(rng, 0.05)), 0.02));
    }
    // The outfield player nearest the holder's spot takes the ball.
    let slot = (1..PLAYERS_PER_TEAM)
        .min_by(|&a, &b| ours[a].dist(holder).total_cmp(&ours[b].dist(holder)))
        .expect("outfield players");
    ours[slot] = holder;
    for (i, p) in ours.iter_mut().enumerate() {
        if i != slot {
            *p = push_clear(*p, holder, 0.12);
        }
    }
    let line = (holder.x + rng.gen_range(0.2..0.35)).clamp(-0.3, 0.88);
    let mut theirs = vec![Vec2::new(0.97, jitter(rng, 0.02))];
    for (dx, y) in THEIR_SHAPE {
        let x = (line + dx + jitter(rng, 0.05)).clamp(-0.9, 0.92);
        theirs.push(inside(Vec2::new(x, y + jitter(rng, 0.05)), 0.02));
    }
    ours.extend(theirs);
    (ours, slot)
}

fn assemble(id: String, category: Category, region: Region, positions: Vec<Vec2>, holder: usize) -> Scenario {
    let players = positions
        .iter()
        .enumerate()
        .map(|(i, p)| Placement { team: if i < PLAYERS_PER_TEAM { Team::Ours } else { Team::Opponent }, x: p.x, y: p.y })
        .collect();
    let h = positions[holder];
    Scenario { id, category, region, label: None, provenance: None, holder, ball: [h.x, h.y], players }
}

fn clear_of_holder(s: &Scenario) -> bool {
    let h = s.holder_pos();
    s.opponents().iter().all(|o| o.dist(h) >= START_CLEARANCE)
}

/// Every teammate gets a marker standing in its passing lane.
fn personal(rng: &mut ChaCha8Rng, region: Region, id: String) -> Scenario {
    let (mut pos, holder) = base_layout(rng, region);
    let h = pos[holder];
    let mates: Vec<usize> = (0..PLAYERS_PER_TEAM).filter(|&i| i != holder).collect();
    for (k, &mate) in mates.iter().enumerate() {
        let lane = pos[mate] - h;
        let len = lane.norm();
        let along = rng.gen_range(0.35..0.75) * len;
        let along = along.max(START_CLEARANCE + 0.02).min(len - 0.02);
        let normal = Vec2::new(-lane.y, lane.x).unit();
        let spot = h + lane.unit() * along + normal * jitter(rng, LANE_BUFFER * 0.4);
        pos[PLAYERS_PER_TEAM + 1 + k] = inside(spot, 0.01);
    }
    assemble(id, Category::Personal, region, pos, holder)
}

/// A formation scene with at least one forward lane cleared.
fn teamwork(rng: &mut ChaCha8Rng, region: Region, id: String) -> Scenario {
    let (mut pos, holder) = base_layout(rng, region);
    let h = pos[holder];
    let candidates: Vec<usize> = (1..PLAYERS_PER_TEAM)
        .filter(|&i| i != holder && (0.15..=0.45).contains(&pos[i].dist(h)))
        .collect();
    if let Some(&mate) = candidates.iter().max_by(|&&a, &&b| pos[a].x.total_cmp(&pos[b].x)) {
        let a = h;
        let b = pos[mate];
        let normal = Vec2::new(-(b - a).y, (b - a).x).unit();
        for o in pos.iter_mut().skip(PLAYERS_PER_TEAM) {
            let d = point_segment_distance(*o, a, b);
            if d < LANE_BUFFER {
                let side = if (*o - a).dot(normal) >= 0.0 { 1.0 } else { -1.0 };
                *o = inside(*o + normal * (side * (LANE_BUFFER - d + 0.03)), 0.01);
            }
        }
    }
    assemble(id, Category::Teamwork, region, pos, holder)
}

fn cell_seed(category: Category, region: Region, seed: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((category as u64) << 40) ^ (u64::from(region.number()) << 32)
}

/// Builds a scene for one category and region. Synthetic categories are
/// regenerated until they satisfy their lane property; `RealWorld` reads
/// fixture `seed % 4` of the region.
pub fn generate_scenario(category: Category, region: Region, seed: u64) -> Result<Scenario, ScenarioError> {
    let index = (seed % SCENES_PER_CELL as u64) as usize;
    let id = scenario_id(category, region, index);
    if category == Category::RealWorld {
        return realworld_fixture(region, index).cloned();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(category, region, seed));
    for _ in 0..ATTEMPTS {
        let s = match category {
            Category::Personal => personal(&mut rng, region, id.clone()),
            _ => teamwork(&mut rng, region, id.clone()),
        };
        let lanes_ok = match category {
            Category::Personal => s.open_lanes().is_empty(),
            _ => !s.open_lanes().is_empty(),
        };
        if lanes_ok && clear_of_holder(&s) && s.validate().is_ok() {
            return Ok(s);
        }
    }
    Err(ScenarioError::Exhausted { category, region })
}

/// The full 108-scene sweep, ordered by category, region, index.
pub fn full_sweep() -> Result<Vec<Scenario>, ScenarioError> {
    let mut out = Vec::with_capacity(SCENARIO_COUNT);
    for category in Category::ALL {
        for region in Region::all() {
            for index in 0..SCENES_PER_CELL {
                out.push(generate_scenario(category, region, index as u64)?);
            }
        }
    }
    Ok(out)
}

const REALWORLD_JSON: &str = include_str!("../../assets/football/realworld.json");

/// Shipped real-match scenes, four per region.
pub fn realworld_fixtures() -> &'static [Scenario] {
    static FIXTURES: OnceLock<Vec<Scenario>> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        let list: Vec<Scenario> = serde_json::from_str(REALWORLD_JSON).expect("bundled fixtures parse");
        for s in &list {
            s.validate().unwrap_or_else(|e| panic!("bundled fixture {}: {e}", s.id));
        }
        list
    })
}

fn realworld_fixture(region: Region, index: usize) -> Result<&'static Scenario, ScenarioError> {
    let id = scenario_id(Category::RealWorld, region, index);
    realworld_fixtures().iter().find(|s| s.id == id).ok_or(ScenarioError::MissingFixture { region, index })
}
