use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::hungarian::hungarian_max;
use super::similarity::{attr_kind, attr_similarity, giou, AttrKind};
use super::snapshot::{ElementSnapshot, PageSnapshot};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchConfig {
    /// Penalty per unit of child-count difference.
    pub children_penalty: f64,
    /// Minimum filter-attribute similarity for a pair to count as a match.
    pub thresholds: BTreeMap<AttrKind, f64>,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            children_penalty: 1e-3,
            thresholds: BTreeMap::from([
                (AttrKind::Text, 0.5),
                (AttrKind::Discrete, 1.0),
                (AttrKind::Continuous, 0.5),
                (AttrKind::Color, 0.8),
            ]),
        }
    }
}

impl MatchConfig {
    pub fn threshold(&self, kind: AttrKind) -> f64 {
        self.thresholds.get(&kind).copied().unwrap_or(1.0)
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.children_penalty > 0.0) {
            return Err("children penalty must be positive".into());
        }
        if let Some((k, t)) = self.thresholds.iter().find(|(_, t)| !(**t > 0.0 && **t <= 1.0)) {
            return Err(format!("threshold for {k:?} is {t}, outside (0, 1]"));
        }
        Ok(())
    }
}

/// Attribute weights `alpha` (default 1) and the space exponent `beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreWeights {
    #[serde(default)]
    pub alpha: BTreeMap<String, f64>,
    #[serde(default = "default_alpha")]
    pub default_alpha: f64,
    pub beta: f64,
}

fn default_alpha() -> f64 {
    1.0
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights { alpha: BTreeMap::new(), default_alpha: 1.0, beta: 0.5 }
    }
}

impl ScoreWeights {
    pub fn alpha(&self, attr: &str) -> f64 {
        self.alpha.get(attr).copied().unwrap_or(self.default_alpha)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.default_alpha < 0.0 || self.alpha.values().any(|a| *a < 0.0) {
            return Err("attribute weights must be non-negative".into());
        }
        if self.default_alpha == 0.0 && self.alpha.values().all(|a| *a == 0.0) {
            return Err("attribute weights are all zero".into());
        }
        Ok(())
    }
}

/// Similarity of the filter attribute, when the ground-truth element has one.
fn filter_similarity(generated: &ElementSnapshot, gt: &ElementSnapshot) -> Option<(f64, AttrKind)> {
    let name = gt.filter_by.as_ref()?;
    let gt_value = gt.attributes.get(name)?;
    let kind = attr_kind(name, gt_value);
    let sim = generated.attributes.get(name).map_or(0.0, |v| attr_similarity(kind, gt_value, v));
    Some((sim, kind))
}

/// Whether `generated` passes the ground-truth element's filter.
pub fn passes_filter(generated: &ElementSnapshot, gt: &ElementSnapshot, cfg: &MatchConfig) -> bool {
    filter_similarity(generated, gt).is_none_or(|(sim, kind)| sim >= cfg.threshold(kind))
}

/// `GIoU + filter - penalty * |children difference|`, with `filter = -1`
/// when the filter attribute falls below its threshold.
pub fn match_score(generated: &ElementSnapshot, gt: &ElementSnapshot, cfg: &MatchConfig) -> f64 {
    let filter = if passes_filter(generated, gt, cfg) { 0.0 } else { -1.0 };
    let children = (generated.children as f64 - gt.children as f64).abs();
    giou(&generated.bbox, &gt.bbox) + filter - cfg.children_penalty * children
}

/// For each atomic ground-truth element (in page order), the generated
/// element it is matched to. Assignment maximizes the total match score;
/// pairs that fail the filter are then dropped.
pub fn match_elements(generated: &PageSnapshot, gt: &PageSnapshot, cfg: &MatchConfig) -> Vec<Option<usize>> {
    let atoms: Vec<&ElementSnapshot> = gt.atoms().collect();
    if generated.elements.is_empty() {
        return vec![None; atoms.len()];
    }
    let scores: Vec<Vec<f64>> = atoms.iter().map(|a| generated.elements.iter().map(|g| match_score(g, a, cfg)).collect()).collect();
    hungarian_max(&scores)
        .into_iter()
        .zip(&atoms)
        .map(|(j, atom)| j.filter(|&j| passes_filter(&generated.elements[j], atom, cfg)))
        .collect()
}

/// Contribution of one ground-truth atom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomScore {
    /// `space^beta` normalized over the page, so weights sum to 1.
    pub weight: f64,
    pub matched: Option<usize>,
    /// Weighted attribute similarity (0 when unmatched).
    pub similarity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageScore {
    pub s_act: f64,
    /// Weight share of atoms left unmatched.
    pub unmatched_share: f64,
    pub atoms: Vec<AtomScore>,
}

/// Per-attribute similarities of a matched pair, in `eval_by` order.
pub fn attribute_similarities(generated: &ElementSnapshot, gt: &ElementSnapshot) -> Vec<(String, f64)> {
    gt.eval_by
        .iter()
        .map(|name| {
            let sim = match (gt.attributes.get(name), generated.attributes.get(name)) {
                (Some(a), Some(b)) => attr_similarity(attr_kind(name, a), a, b),
                _ => 0.0,
            };
            (name.clone(), sim)
        })
        .collect()
}

/// Alpha-weighted mean of attribute similarities; plain mean when every
/// weight involved is zero.
pub fn weighted_similarity(sims: &[(String, f64)], w: &ScoreWeights) -> f64 {
    if sims.is_empty() {
        return 0.0;
    }
    let total: f64 = sims.iter().map(|(n, _)| w.alpha(n)).sum();
    if total > 0.0 {
        sims.iter().map(|(n, s)| w.alpha(n) * s).sum::<f64>() / total
    } else {
        sims.iter().map(|(_, s)| s).sum::<f64>() / sims.len() as f64
    }
}

/// Unnormalized `space^beta` weights; all ones when every space is zero.
pub fn raw_space_weights(spaces: &[f64], beta: f64) -> Vec<f64> {
    let raw: Vec<f64> = spaces.iter().map(|s| if *s > 0.0 { s.powf(beta) } else { 0.0 }).collect();
    if raw.iter().any(|r| *r > 0.0) {
        raw
    } else {
        vec![1.0; spaces.len()]
    }
}

/// Normalized `space^beta` weights.
pub fn space_weights(spaces: &[f64], beta: f64) -> Vec<f64> {
    let raw = raw_space_weights(spaces, beta);
    let total: f64 = raw.iter().sum();
    raw.iter().map(|r| r / total).collect()
}

/// Score of one generated page against its ground truth, in `[0, 1]`.
/// Only OK pages are scored here; failed pages are handled by the report.
pub fn score_page(generated: &PageSnapshot, gt: &PageSnapshot, cfg: &MatchConfig, w: &ScoreWeights) -> PageScore {
    let atoms: Vec<&ElementSnapshot> = gt.atoms().collect();
    let assignment = match_elements(generated, gt, cfg);
    let raw = raw_space_weights(&atoms.iter().map(|a| a.space()).collect::<Vec<_>>(), w.beta);
    let total: f64 = raw.iter().sum();
    if atoms.is_empty() {
        return PageScore { s_act: 1.0, unmatched_share: 0.0, atoms: Vec::new() };
    }
    // Summing raw weights and dividing once keeps a perfect clone at exactly 1.
    let mut earned = 0.0;
    let mut missed = 0.0;
    let mut out = Vec::with_capacity(atoms.len());
    for ((atom, matched), r) in atoms.iter().zip(assignment).zip(raw) {
        let similarity = match matched {
            Some(j) => weighted_similarity(&attribute_similarities(&generated.elements[j], atom), w),
            None => {
                missed += r;
                0.0
            }
        };
        earned += r * similarity;
        out.push(AtomScore { weight: r / total, matched, similarity });
    }
    PageScore { s_act: earned / total, unmatched_share: missed / total, atoms: out }
}
