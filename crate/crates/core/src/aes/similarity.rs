use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::snapshot::{AttrValue, BBox};

/// Generalized IoU in `[-1, 1]`. Degenerate boxes have zero intersection;
/// the enclosing box still comes from their coordinates.
pub fn giou(a: &BBox, b: &BBox) -> f64 {
    let iw = (a.right().min(b.right()) - a.x.max(b.x)).max(0.0);
    let ih = (a.bottom().min(b.bottom()) - a.y.max(b.y)).max(0.0);
    let inter = iw * ih;
    let union = a.area() + b.area() - inter;
    let cw = a.right().max(b.right()) - a.x.min(b.x);
    let ch = a.bottom().max(b.bottom()) - a.y.min(b.y);
    let enclosure = cw * ch;
    let iou = if union > 0.0 { inter / union } else { 0.0 };
    if enclosure > 0.0 {
        iou - (enclosure - union) / enclosure
    } else if a == b {
        1.0
    } else {
        iou
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttrKind {
    Text,
    Continuous,
    Discrete,
    Color,
}

const TEXT_ATTRS: &[&str] = &["text", "content", "alt", "title", "placeholder", "label", "value", "innertext"];
const COLOR_ATTRS: &[&str] = &[
    "color",
    "background-color",
    "border-color",
    "outline-color",
    "border-top-color",
    "border-bottom-color",
    "border-left-color",
    "border-right-color",
    "text-decoration-color",
    "fill",
    "stroke",
];
const CONTINUOUS_ATTRS: &[&str] = &[
    "border-width",
    "border-radius",
    "font-size",
    "height",
    "width",
    "letter-spacing",
    "line-height",
    "word-spacing",
    "opacity",
    "margin",
    "margin-top",
    "margin-bottom",
    "margin-left",
    "margin-right",
    "padding",
    "padding-top",
    "padding-bottom",
    "padding-left",
    "padding-right",
    "top",
    "left",
    "right",
    "bottom",
    "gap",
    "outline-width",
    "min-width",
    "max-width",
    "min-height",
    "max-height",
    "font-weight",
    "z-index",
];
const DISCRETE_ATTRS: &[&str] = &[
    "background-image",
    "background-repeat",
    "src",
    "href",
    "type",
    "border-style",
    "outline-style",
    "font-family",
    "font-style",
    "tab-size",
    "display",
    "position",
    "text-align",
    "text-decoration",
    "text-transform",
    "visibility",
    "cursor",
    "flex-direction",
    "justify-content",
    "align-items",
    "float",
    "overflow",
    "white-space",
    "list-style-type",
    "tag",
];

/// Attribute kind by name, falling back to the shape of the value.
pub fn attr_kind(name: &str, value: &AttrValue) -> AttrKind {
    let n = name.trim().to_ascii_lowercase();
    if TEXT_ATTRS.contains(&n.as_str()) {
        AttrKind::Text
    } else if COLOR_ATTRS.contains(&n.as_str()) {
        AttrKind::Color
    } else if CONTINUOUS_ATTRS.contains(&n.as_str()) {
        AttrKind::Continuous
    } else if DISCRETE_ATTRS.contains(&n.as_str()) {
        AttrKind::Discrete
    } else {
        match value {
            AttrValue::Number(_) => AttrKind::Continuous,
            AttrValue::Text(s) if parse_color(s).is_some() => AttrKind::Color,
            AttrValue::Text(s) if parse_lengths(s).is_some() => AttrKind::Continuous,
            AttrValue::Text(s) if s.split_whitespace().count() > 1 => AttrKind::Text,
            AttrValue::Text(_) => AttrKind::Discrete,
        }
    }
}

/// Similarity in `[0, 1]` between a ground-truth and a generated value.
pub fn attr_similarity(kind: AttrKind, gt: &AttrValue, generated: &AttrValue) -> f64 {
    match kind {
        AttrKind::Text => text_similarity(&gt.as_text(), &generated.as_text()),
        AttrKind::Discrete => f64::from(gt.as_text().trim().eq_ignore_ascii_case(generated.as_text().trim())),
        AttrKind::Continuous => continuous_similarity(gt, generated),
        AttrKind::Color => color_similarity(&gt.as_text(), &generated.as_text()),
    }
}

/// IoU of the whitespace-separated term sets; 1 when both are empty.
pub fn text_similarity(gt: &str, generated: &str) -> f64 {
    let a: BTreeSet<&str> = gt.split_whitespace().collect();
    let b: BTreeSet<&str> = generated.split_whitespace().collect();
    let union = a.union(&b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}

/// Parses a CSS length list such as `12px`, `1.5em`, `50%`, `0` or
/// `4px 8px`. Each entry is `(value, unit)` with a lowercase unit.
pub fn parse_lengths(s: &str) -> Option<Vec<(f64, String)>> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.is_empty() {
        return None;
    }
    parts
        .iter()
        .map(|p| {
            let split = p.find(|c: char| !(c.is_ascii_digit() || c == '.' || c == '-' || c == '+')).unwrap_or(p.len());
            let (num, unit) = p.split_at(split);
            let v: f64 = num.parse().ok()?;
            let unit = unit.to_ascii_lowercase();
            if !unit.is_empty() && !unit.chars().all(|c| c.is_ascii_alphabetic() || c == '%') {
                return None;
            }
            Some((v, unit))
        })
        .collect()
}

fn relative_similarity(gt: f64, generated: f64) -> f64 {
    if gt == generated {
        return 1.0;
    }
    if gt == 0.0 {
        return 0.0;
    }
    (1.0 - (gt - generated).abs() / gt.abs()).clamp(0.0, 1.0)
}

fn units_compatible(a: &str, b: &str, av: f64, bv: f64) -> bool {
    a == b || (a.is_empty() && av == 0.0) || (b.is_empty() && bv == 0.0)
}

/// One minus the relative error, clamped to `[0, 1]`. Lists are compared
/// entry by entry and averaged; mismatched units or lengths score 0.
pub fn continuous_similarity(gt: &AttrValue, generated: &AttrValue) -> f64 {
    let to_list = |v: &AttrValue| match v {
        AttrValue::Number(n) => Some(vec![(*n, String::new())]),
        AttrValue::Text(s) => parse_lengths(s),
    };
    let (Some(a), Some(b)) = (to_list(gt), to_list(generated)) else {
        return f64::from(gt.as_text().trim() == generated.as_text().trim());
    };
    if a.len() != b.len() {
        return 0.0;
    }
    let mut total = 0.0;
    for ((av, au), (bv, bu)) in a.iter().zip(&b) {
        if !units_compatible(au, bu, *av, *bv) {
            return 0.0;
        }
        total += relative_similarity(*av, *bv);
    }
    total / a.len() as f64
}

const NAMED_COLORS: &[(&str, [u8; 3])] = &[
    ("black", [0, 0, 0]),
    ("white", [255, 255, 255]),
    ("red", [255, 0, 0]),
    ("green", [0, 128, 0]),
    ("lime", [0, 255, 0]),
    ("blue", [0, 0, 255]),
    ("yellow", [255, 255, 0]),
    ("orange", [255, 165, 0]),
    ("purple", [128, 0, 128]),
    ("gray", [128, 128, 128]),
    ("grey", [128, 128, 128]),
    ("silver", [192, 192, 192]),
    ("navy", [0, 0, 128]),
    ("teal", [0, 128, 128]),
    ("maroon", [128, 0, 0]),
    ("olive", [128, 128, 0]),
    ("aqua", [0, 255, 255]),
    ("cyan", [0, 255, 255]),
    ("fuchsia", [255, 0, 255]),
    ("magenta", [255, 0, 255]),
    ("pink", [255, 192, 203]),
    ("brown", [165, 42, 42]),
    ("transparent", [0, 0, 0]),
];

/// Parses `#rgb`, `#rrggbb`, `#rrggbbaa`, `rgb(...)`, `rgba(...)` or a
/// named color into 8-bit channels; alpha is ignored.
pub fn parse_color(s: &str) -> Option<[u8; 3]> {
    let s = s.trim().to_ascii_lowercase();
    if let Some(hex) = s.strip_prefix('#') {
        let digits: Vec<u8> = hex.chars().map(|c| c.to_digit(16).map(|d| d as u8)).collect::<Option<_>>()?;
        return match digits.len() {
            3 | 4 => Some([digits[0] * 17, digits[1] * 17, digits[2] * 17]),
            6 | 8 => Some([digits[0] * 16 + digits[1], digits[2] * 16 + digits[3], digits[4] * 16 + digits[5]]),
            _ => None,
        };
    }
    if let Some(body) = s.strip_prefix("rgba(").or_else(|| s.strip_prefix("rgb(")) {
        let body = body.strip_suffix(')')?;
        let parts: Vec<&str> = body.split([',', ' ', '/']).filter(|p| !p.is_empty()).collect();
        if parts.len() < 3 {
            return None;
        }
        let mut out = [0u8; 3];
        for (o, p) in out.iter_mut().zip(&parts) {
            let v = if let Some(pct) = p.strip_suffix('%') {
                pct.parse::<f64>().ok()? * 2.55
            } else {
                p.parse::<f64>().ok()?
            };
            *o = v.round().clamp(0.0, 255.0) as u8;
        }
        return Some(out);
    }
    NAMED_COLORS.iter().find(|(n, _)| *n == s).map(|(_, c)| *c)
}

/// `1 - mean channel difference / 256`; unparseable colors only match
/// themselves.
pub fn color_similarity(gt: &str, generated: &str) -> f64 {
    match (parse_color(gt), parse_color(generated)) {
        (Some(a), Some(b)) => {
            let diff: f64 = a.iter().zip(&b).map(|(x, y)| (f64::from(*x) - f64::from(*y)).abs()).sum();
            1.0 - diff / 3.0 / 256.0
        }
        _ => f64::from(gt.trim().eq_ignore_ascii_case(generated.trim())),
    }
}
