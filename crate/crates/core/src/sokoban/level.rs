use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Wall,
    Floor,
    Target,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Up,
    Down,
    Left,
    Right,
}

pub const DIRS: [Dir; 4] = [Dir::Up, Dir::Down, Dir::Left, Dir::Right];

impl Dir {
    pub fn name(self) -> &'static str {
        match self {
            Dir::Up => "Up",
            Dir::Down => "Down",
            Dir::Left => "Left",
            Dir::Right => "Right",
        }
    }

    pub fn delta(self) -> (i32, i32) {
        match self {
            Dir::Up => (-1, 0),
            Dir::Down => (1, 0),
            Dir::Left => (0, -1),
            Dir::Right => (0, 1),
        }
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dir {
    type Err = LevelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DIRS.iter()
            .copied()
            .find(|d| d.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| LevelError::UnknownAction(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum LevelError {
    #[error("empty level grid")]
    Empty,
    #[error("unexpected character {0:?} at row {1}, column {2}")]
    BadChar(char, usize, usize),
    #[error("level has {0} players, expected exactly one")]
    PlayerCount(usize),
    #[error("level has {boxes} boxes but {targets} targets")]
    BoxTargetMismatch { boxes: usize, targets: usize },
    #[error("level has no boxes")]
    NoBoxes,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("unknown action {0:?}")]
    UnknownAction(String),
}

/// A Sokoban puzzle: static grid plus the initial box and player placement.
///
/// Cells are addressed by row-major index. `boxes` and `targets` are kept
/// sorted so that equal configurations compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<Cell>,
    pub boxes: Vec<usize>,
    pub targets: Vec<usize>,
    pub player: usize,
    /// Difficulty tier 1..=8 (0 for levels loaded without a header).
    pub tier: u8,
    pub optimal_steps: usize,
    pub r_best: f64,
}

impl Level {
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.width + col
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx / self.width, idx % self.width)
    }

    /// Neighbour of `idx` in direction `dir`, or `None` off the grid.
    pub fn neighbor(&self, idx: usize, dir: Dir) -> Option<usize> {
        let (r, c) = self.coords(idx);
        let (dr, dc) = dir.delta();
        let (nr, nc) = (r as i32 + dr, c as i32 + dc);
        if nr < 0 || nc < 0 || nr as usize >= self.height || nc as usize >= self.width {
            None
        } else {
            Some(self.index(nr as usize, nc as usize))
        }
    }

    pub fn is_wall(&self, idx: usize) -> bool {
        self.cells[idx] == Cell::Wall
    }

    /// Treats off-grid neighbours as walls.
    pub fn is_wall_toward(&self, idx: usize, dir: Dir) -> bool {
        self.neighbor(idx, dir).is_none_or(|n| self.is_wall(n))
    }

    pub fn is_target(&self, idx: usize) -> bool {
        self.cells[idx] == Cell::Target
    }

    /// Parses the grid part of a level (standard notation, no header).
    pub fn parse_grid(text: &str) -> Result<Level, LevelError> {
        let rows: Vec<&str> = text
            .lines()
            .filter(|l| !l.trim_start().starts_with(';'))
            .map(|l| l.trim_end_matches(['\r']))
            .collect();
        let rows: Vec<&str> = {
            let start = rows.iter().position(|l| !l.trim().is_empty());
            let end = rows.iter().rposition(|l| !l.trim().is_empty());
            match (start, end) {
                (Some(s), Some(e)) => rows[s..=e].to_vec(),
                _ => return Err(LevelError::Empty),
            }
        };
        let height = rows.len();
        let width = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
        if width == 0 {
            return Err(LevelError::Empty);
        }
        let mut cells = vec![Cell::Wall; width * height];
        let mut boxes = Vec::new();
        let mut targets = Vec::new();
        let mut players = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (c, ch) in row.chars().enumerate() {
                let idx = r * width + c;
                let (cell, has_box, has_player) = match ch {
                    '#' => (Cell::Wall, false, false),
                    ' ' | '-' | '_' => (Cell::Floor, false, false),
                    '.' => (Cell::Target, false, false),
                    '$' => (Cell::Floor, true, false),
                    '*' => (Cell::Target, true, false),
                    '@' => (Cell::Floor, false, true),
                    '+' => (Cell::Target, false, true),
                    other => return Err(LevelError::BadChar(other, r, c)),
                };
                cells[idx] = cell;
                if cell == Cell::Target {
                    targets.push(idx);
                }
                if has_box {
                    boxes.push(idx);
                }
                if has_player {
                    players.push(idx);
                }
            }
        }
        if players.len() != 1 {
            return Err(LevelError::PlayerCount(players.len()));
        }
        if boxes.is_empty() {
            return Err(LevelError::NoBoxes);
        }
        if boxes.len() != targets.len() {
            return Err(LevelError::BoxTargetMismatch { boxes: boxes.len(), targets: targets.len() });
        }
        boxes.sort_unstable();
        targets.sort_unstable();
        Ok(Level {
            width,
            height,
            cells,
            boxes,
            targets,
            player: players[0],
            tier: 0,
            optimal_steps: 0,
            r_best: 0.0,
        })
    }

    /// Parses a level file: a `; tier=<k> optimal=<n> rbest=<r>` header
    /// followed by the grid.
    pub fn parse(text: &str) -> Result<Level, LevelError> {
        let header = text
            .lines()
            .find(|l| l.trim_start().starts_with(';'))
            .ok_or_else(|| LevelError::BadHeader("missing header line".into()))?;
        let mut level = Level::parse_grid(text)?;
        let mut tier = None;
        let mut optimal = None;
        let mut rbest = None;
        for field in header.trim_start().trim_start_matches(';').split_whitespace() {
            let Some((key, value)) = field.split_once('=') else { continue };
            let bad = || LevelError::BadHeader(field.to_string());
            match key {
                "tier" => tier = Some(value.parse::<u8>().map_err(|_| bad())?),
                "optimal" => optimal = Some(value.parse::<usize>().map_err(|_| bad())?),
                "rbest" => rbest = Some(value.parse::<f64>().map_err(|_| bad())?),
                _ => {}
            }
        }
        level.tier = tier.ok_or_else(|| LevelError::BadHeader("tier".into()))?;
        level.optimal_steps = optimal.ok_or_else(|| LevelError::BadHeader("optimal".into()))?;
        level.r_best = rbest.ok_or_else(|| LevelError::BadHeader("rbest".into()))?;
        Ok(level)
    }

    pub fn grid_text(&self, boxes: &[usize], player: usize) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for r in 0..self.height {
            let mut line = String::with_capacity(self.width);
            for c in 0..self.width {
                let idx = self.index(r, c);
                let has_box = boxes.binary_search(&idx).is_ok();
                let ch = match (self.cells[idx], has_box, idx == player) {
                    (Cell::Wall, _, _) => '#',
                    (Cell::Target, true, _) => '*',
                    (Cell::Target, false, true) => '+',
                    (Cell::Target, false, false) => '.',
                    (Cell::Floor, true, _) => '$',
                    (Cell::Floor, false, true) => '@',
                    (Cell::Floor, false, false) => ' ',
                };
                line.push(ch);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// Serialises the level in file form (header + grid).
    pub fn to_file_text(&self) -> String {
        format!(
            "; tier={} optimal={} rbest={}\n{}",
            self.tier,
            self.optimal_steps,
            self.r_best,
            self.grid_text(&self.boxes, self.player)
        )
    }

    pub fn is_solved_by(&self, boxes: &[usize]) -> bool {
        boxes == self.targets.as_slice()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_notation() {
        let lvl = Level::parse_grid("#####\n#@$.#\n#####\n").unwrap();
        assert_eq!((lvl.width, lvl.height), (5, 3));
        assert_eq!(lvl.player, 6);
        assert_eq!(lvl.boxes, vec![7]);
        assert_eq!(lvl.targets, vec![8]);
    }

    #[test]
    fn header_round_trip() {
        let mut lvl = Level::parse_grid("######\n#@$ .#\n######").unwrap();
        lvl.tier = 1;
        lvl.optimal_steps = 2;
        lvl.r_best = 54.0;
        let text = lvl.to_file_text();
        assert!(text.starts_with("; tier=1 optimal=2 rbest=54\n"));
        assert_eq!(Level::parse(&text).unwrap(), lvl);
    }

    #[test]
    fn rejects_malformed_levels() {
        assert_eq!(Level::parse_grid("###\n#$#\n###").unwrap_err(), LevelError::PlayerCount(0));
        assert!(matches!(
            Level::parse_grid("#####\n#@$$.#\n#####").unwrap_err(),
            LevelError::BoxTargetMismatch { .. }
        ));
        assert!(matches!(Level::parse_grid("#x#").unwrap_err(), LevelError::BadChar('x', 0, 1)));
        assert!(Level::parse("#####\n#@$.#\n#####").is_err());
    }

    #[test]
    fn box_on_target_and_player_on_target() {
        let lvl = Level::parse_grid("#####\n#+*$#\n#   #\n#####").unwrap();
        assert!(lvl.is_target(lvl.player));
        assert_eq!(lvl.boxes.len(), 2);
        assert_eq!(lvl.targets.len(), 2);
    }
}
