use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Axis-aligned box in page pixels, serialized as `[x, y, w, h]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct BBox {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl BBox {
    pub const fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        BBox { x, y, w, h }
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }
}

impl From<[f64; 4]> for BBox {
    fn from([x, y, w, h]: [f64; 4]) -> Self {
        BBox { x, y, w, h }
    }
}

impl From<BBox> for [f64; 4] {
    fn from(b: BBox) -> Self {
        [b.x, b.y, b.w, b.h]
    }
}

/// An attribute value as captured from the rendered page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AttrValue {
    Number(f64),
    Text(String),
}

impl AttrValue {
    pub fn as_text(&self) -> String {
        match self {
            AttrValue::Number(n) => format!("{n}"),
            AttrValue::Text(s) => s.clone(),
        }
    }
}

impl fmt::Display for AttrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_text())
    }
}

impl From<&str> for AttrValue {
    fn from(s: &str) -> Self {
        AttrValue::Text(s.to_string())
    }
}

impl From<f64> for AttrValue {
    fn from(n: f64) -> Self {
        AttrValue::Number(n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementSnapshot {
    pub tag: String,
    pub bbox: BBox,
    /// Number of child elements.
    #[serde(default)]
    pub children: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter_by: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eval_by: Vec<String>,
    #[serde(default)]
    pub attributes: BTreeMap<String, AttrValue>,
    /// Area weight; the bbox area when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<f64>,
}

impl ElementSnapshot {
    pub fn new(tag: impl Into<String>, bbox: BBox) -> Self {
        ElementSnapshot {
            tag: tag.into(),
            bbox,
            children: 0,
            filter_by: None,
            eval_by: Vec::new(),
            attributes: BTreeMap::new(),
            space: None,
        }
    }

    pub fn attr(mut self, name: &str, value: impl Into<AttrValue>) -> Self {
        self.attributes.insert(name.to_string(), value.into());
        self
    }

    pub fn eval(mut self, names: &[&str]) -> Self {
        self.eval_by = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn filter(mut self, name: &str) -> Self {
        self.filter_by = Some(name.to_string());
        self
    }

    pub fn with_children(mut self, n: usize) -> Self {
        self.children = n;
        self
    }

    /// Atomic elements carry evaluation attributes.
    pub fn is_atomic(&self) -> bool {
        !self.eval_by.is_empty()
    }

    pub fn space(&self) -> f64 {
        self.space.unwrap_or_else(|| self.bbox.area()).max(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PageStatus {
    #[serde(rename = "OK")]
    Ok,
    RenderError,
    InteractionError,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub w: f64,
    pub h: f64,
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport { w: 1280.0, h: 800.0 }
    }
}

/// One static page: the initial load or the result of a named interaction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageSnapshot {
    pub action_id: String,
    pub status: PageStatus,
    #[serde(default)]
    pub viewport: Viewport,
    #[serde(default)]
    pub elements: Vec<ElementSnapshot>,
}

pub const INITIAL_ACTION: &str = "initial";

#[derive(Debug, Error, PartialEq)]
pub enum SnapshotError {
    #[error("malformed snapshot: {0}")]
    Parse(String),
    #[error("element {index} has a negative size")]
    NegativeSize { index: usize },
    #[error("element {index} names attribute {name:?} that it does not carry")]
    MissingAttribute { index: usize, name: String },
    #[error("page {0:?} is OK but has no elements")]
    EmptyPage(String),
}

impl PageSnapshot {
    pub fn ok(action_id: impl Into<String>, elements: Vec<ElementSnapshot>) -> Self {
        PageSnapshot { action_id: action_id.into(), status: PageStatus::Ok, viewport: Viewport::default(), elements }
    }

    pub fn failed(action_id: impl Into<String>, status: PageStatus) -> Self {
        PageSnapshot { action_id: action_id.into(), status, viewport: Viewport::default(), elements: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), SnapshotError> {
        if self.status == PageStatus::Ok && self.elements.is_empty() {
            return Err(SnapshotError::EmptyPage(self.action_id.clone()));
        }
        for (index, e) in self.elements.iter().enumerate() {
            if e.bbox.w < 0.0 || e.bbox.h < 0.0 {
                return Err(SnapshotError::NegativeSize { index });
            }
            for name in e.filter_by.iter().chain(&e.eval_by) {
                if !e.attributes.contains_key(name) {
                    return Err(SnapshotError::MissingAttribute { index, name: name.clone() });
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, SnapshotError> {
        let page: PageSnapshot = serde_json::from_str(text).map_err(|e| SnapshotError::Parse(e.to_string()))?;
        page.validate()?;
        Ok(page)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("snapshot serializes")
    }

    pub fn atoms(&self) -> impl Iterator<Item = &ElementSnapshot> {
        self.elements.iter().filter(|e| e.is_atomic())
    }
}
