use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matching::{score_page, MatchConfig, ScoreWeights};
use super::snapshot::{PageSnapshot, PageStatus};

/// Score lost to each failure class, in percentage points.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ErrorBuckets {
    /// No code could be extracted from the agent's reply.
    pub parse: f64,
    /// The page failed to render.
    pub render: f64,
    /// An interaction could not be performed.
    pub interaction: f64,
    /// Ground-truth atoms without a matching generated element.
    pub matching: f64,
    /// Similarity lost on matched atoms.
    pub attribute: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageReport {
    pub action_id: String,
    pub status: PageStatus,
    pub s_act: f64,
    pub unmatched_share: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AesReport {
    /// Mean page score in percent.
    pub aes: f64,
    pub buckets: ErrorBuckets,
    pub pages: Vec<PageReport>,
}

impl AesReport {
    /// AES plus all buckets, accumulated in a fixed order; always 100.
    pub fn total(&self) -> f64 {
        let b = &self.buckets;
        self.aes + b.parse + b.render + b.interaction + b.matching + b.attribute
    }

    fn lost_everything(gt: &[PageSnapshot], cause: PageStatus, parse: bool) -> AesReport {
        let mut buckets = ErrorBuckets::default();
        if parse {
            buckets.parse = 100.0;
        } else {
            buckets.render = 100.0;
        }
        let pages = gt
            .iter()
            .map(|p| PageReport { action_id: p.action_id.clone(), status: cause, s_act: 0.0, unmatched_share: 0.0 })
            .collect();
        AesReport { aes: 0.0, buckets, pages }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum AesError {
    #[error("no ground-truth pages")]
    NoGroundTruth,
    #[error("ground-truth page {0:?} is not a successfully rendered page")]
    BadGroundTruth(String),
    #[error("ground-truth page {0:?} has no atomic elements")]
    NoAtoms(String),
}

/// What an agent produced for one task.
#[derive(Debug, Clone, PartialEq)]
pub enum Generation {
    /// The reply contained no usable code.
    Unparsed,
    /// Captured pages, looked up by action id. `malformed` lists action
    /// ids whose snapshot existed but could not be read.
    Pages { pages: Vec<PageSnapshot>, malformed: Vec<String> },
}

impl Generation {
    pub fn pages(pages: Vec<PageSnapshot>) -> Self {
        Generation::Pages { pages, malformed: Vec::new() }
    }
}

/// Scores generated pages against ground-truth pages (the first of which
/// is the initial page). The result is the mean page score in percent,
/// with the remainder attributed to error buckets so that AES and buckets
/// sum to 100.
pub fn aes(generation: &Generation, gt: &[PageSnapshot], cfg: &MatchConfig, w: &ScoreWeights) -> Result<AesReport, AesError> {
    let first = gt.first().ok_or(AesError::NoGroundTruth)?;
    for p in gt {
        if p.status != PageStatus::Ok {
            return Err(AesError::BadGroundTruth(p.action_id.clone()));
        }
        if p.atoms().next().is_none() {
            return Err(AesError::NoAtoms(p.action_id.clone()));
        }
    }
    let pages = match generation {
        Generation::Unparsed => return Ok(AesReport::lost_everything(gt, PageStatus::RenderError, true)),
        Generation::Pages { pages, malformed } => (pages, malformed),
    };
    let (pages, malformed) = pages;
    let is_malformed = |id: &str| malformed.iter().any(|m| m == id);
    if is_malformed(&first.action_id) {
        return Ok(AesReport::lost_everything(gt, PageStatus::RenderError, true));
    }
    let find = |id: &str| pages.iter().find(|p| p.action_id == id);
    let initial_ok = find(&first.action_id).is_some_and(|p| p.status == PageStatus::Ok);
    if !initial_ok {
        return Ok(AesReport::lost_everything(gt, PageStatus::RenderError, false));
    }

    let share = 100.0 / gt.len() as f64;
    let mut earned = 0.0;
    let mut buckets = ErrorBuckets::default();
    let mut reports = Vec::with_capacity(gt.len());
    for gt_page in gt {
        if is_malformed(&gt_page.action_id) {
            buckets.parse += share;
            reports.push(PageReport { action_id: gt_page.action_id.clone(), status: PageStatus::RenderError, s_act: 0.0, unmatched_share: 0.0 });
            continue;
        }
        let generated = find(&gt_page.action_id);
        let status = generated.map_or(PageStatus::InteractionError, |p| p.status);
        let (s_act, unmatched) = match (status, generated) {
            (PageStatus::Ok, Some(g)) => {
                let s = score_page(g, gt_page, cfg, w);
                (s.s_act, s.unmatched_share)
            }
            _ => (0.0, 0.0),
        };
        match status {
            PageStatus::Ok => {
                earned += s_act;
                buckets.matching += unmatched * share;
            }
            PageStatus::RenderError => buckets.render += share,
            PageStatus::InteractionError => buckets.interaction += share,
        }
        reports.push(PageReport { action_id: gt_page.action_id.clone(), status, s_act, unmatched_share: unmatched });
    }
    let aes = earned * share;
    // Attribute loss is whatever remains; see `AesReport::total`.
    let accounted = aes + buckets.parse + buckets.render + buckets.interaction + buckets.matching;
    buckets.attribute = 100.0 - accounted;
    Ok(AesReport { aes, buckets, pages: reports })
}
