//! Atomic Element Similarity: scoring a regenerated web page against the
//! original through its annotated atomic elements.
//!
//! Each ground-truth page lists atomic elements with a bounding box,
//! attributes to evaluate and optionally a filter attribute. Generated
//! elements are matched to them by a maximum-weight assignment on
//! GIoU-based scores, matched pairs are compared attribute by attribute,
//! and the per-page scores are averaged into a percentage with the lost
//! remainder attributed to error classes.

mod hungarian;
mod matching;
mod pso;
mod report;
mod similarity;
mod snapshot;

pub use hungarian::{assignment_value, hungarian_max};
pub use matching::{
    attribute_similarities, match_elements, match_score, passes_filter, raw_space_weights, score_page, space_weights, weighted_similarity, AtomScore,
    MatchConfig, PageScore, ScoreWeights,
};
pub use pso::{agreement, fitness, pso_search, weights_from_position, AttributeIndex, CandidateProfile, Preference, PsoConfig, PsoError, PsoResult};
pub use report::{aes, AesError, AesReport, ErrorBuckets, Generation, PageReport};
pub use similarity::{attr_kind, attr_similarity, color_similarity, continuous_similarity, giou, parse_color, parse_lengths, text_similarity, AttrKind};
pub use snapshot::{AttrValue, BBox, ElementSnapshot, PageSnapshot, PageStatus, SnapshotError, Viewport, INITIAL_ACTION};
