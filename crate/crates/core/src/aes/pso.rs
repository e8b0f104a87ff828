//! Particle-swarm search for attribute weights and the space exponent
//! that best agree with pairwise preferences between candidate pages.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matching::{attribute_similarities, match_elements, raw_space_weights, MatchConfig, ScoreWeights};
use super::report::{AesError, Generation};
use super::snapshot::{PageSnapshot, PageStatus};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq)]
struct AtomTerm {
    space: f64,
    /// `(attribute index, similarity)` per evaluated attribute; `None`
    /// when the atom went unmatched.
    sims: Option<Vec<(usize, f64)>>,
}

/// A candidate generation with matching and attribute similarities
/// precomputed. Matching does not depend on the score weights, so AES can
/// be re-evaluated for any weights without re-matching.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateProfile {
    /// Per ground-truth page; `None` for pages lost to errors.
    pages: Vec<Option<Vec<AtomTerm>>>,
}

/// Interns attribute names to dense indices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AttributeIndex {
    names: Vec<String>,
}

impl AttributeIndex {
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return i;
        }
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

impl CandidateProfile {
    pub fn build(generation: &Generation, gt: &[PageSnapshot], cfg: &MatchConfig, attrs: &mut AttributeIndex) -> Result<Self, AesError> {
        let first = gt.first().ok_or(AesError::NoGroundTruth)?;
        let Generation::Pages { pages, malformed } = generation else {
            return Ok(CandidateProfile { pages: vec![None; gt.len()] });
        };
        let find = |id: &str| {
            if malformed.iter().any(|m| m == id) {
                return None;
            }
            pages.iter().find(|p| p.action_id == id && p.status == PageStatus::Ok)
        };
        if find(&first.action_id).is_none() {
            return Ok(CandidateProfile { pages: vec![None; gt.len()] });
        }
        let mut out = Vec::with_capacity(gt.len());
        for gt_page in gt {
            let Some(g) = find(&gt_page.action_id) else {
                out.push(None);
                continue;
            };
            let assignment = match_elements(g, gt_page, cfg);
            let terms = gt_page
                .atoms()
                .zip(assignment)
                .map(|(atom, m)| AtomTerm {
                    space: atom.space(),
                    sims: m.map(|j| {
                        attribute_similarities(&g.elements[j], atom).into_iter().map(|(n, s)| (attrs.intern(&n), s)).collect()
                    }),
                })
                .collect();
            out.push(Some(terms));
        }
        Ok(CandidateProfile { pages: out })
    }

    /// AES in percent for attribute weights `alpha` (indexed like the
    /// attribute index) and space exponent `beta`.
    pub fn aes(&self, alpha: &[f64], beta: f64) -> f64 {
        let share = 100.0 / self.pages.len() as f64;
        let mut earned = 0.0;
        for page in self.pages.iter().flatten() {
            let raw = raw_space_weights(&page.iter().map(|a| a.space).collect::<Vec<_>>(), beta);
            let total: f64 = raw.iter().sum();
            let mut page_earned = 0.0;
            for (atom, r) in page.iter().zip(&raw) {
                let Some(sims) = &atom.sims else { continue };
                let wsum: f64 = sims.iter().map(|(i, _)| alpha[*i]).sum();
                let sim = if wsum > 0.0 {
                    sims.iter().map(|(i, s)| alpha[*i] * s).sum::<f64>() / wsum
                } else if sims.is_empty() {
                    0.0
                } else {
                    sims.iter().map(|(_, s)| s).sum::<f64>() / sims.len() as f64
                };
                page_earned += r * sim;
            }
            earned += page_earned / total;
        }
        earned * share
    }
}

/// Candidate `better` was preferred over candidate `worse`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preference {
    pub better: usize,
    pub worse: usize,
}

/// Fraction of preferences reproduced by `scores`; ties count one half.
pub fn agreement(scores: &[f64], prefs: &[Preference]) -> f64 {
    if prefs.is_empty() {
        return 0.0;
    }
    let hits: f64 = prefs
        .iter()
        .map(|p| match scores[p.better].partial_cmp(&scores[p.worse]) {
            Some(std::cmp::Ordering::Greater) => 1.0,
            Some(std::cmp::Ordering::Equal) => 0.5,
            _ => 0.0,
        })
        .sum();
    hits / prefs.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsoConfig {
    pub particles: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub alpha_max: f64,
    pub beta_max: f64,
    pub seed: u64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        PsoConfig {
            particles: 32,
            iterations: 60,
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            alpha_max: 1.0,
            beta_max: 2.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PsoError {
    #[error("no candidates to rank")]
    NoCandidates,
    #[error("no preference pairs")]
    NoPreferences,
    #[error("preference refers to candidate {0}, but only {1} exist")]
    BadIndex(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoResult {
    pub weights: ScoreWeights,
    pub agreement: f64,
    /// Best agreement after each iteration.
    pub history: Vec<f64>,
}

/// Agreement of the AES rankings produced by position `x`
/// (`alpha_0..alpha_k, beta`).
pub fn fitness(x: &[f64], candidates: &[CandidateProfile], prefs: &[Preference]) -> f64 {
    let (alpha, beta) = x.split_at(x.len() - 1);
    let scores: Vec<f64> = candidates.iter().map(|c| c.aes(alpha, beta[0])).collect();
    agreement(&scores, prefs)
}

pub fn weights_from_position(x: &[f64], attrs: &AttributeIndex) -> ScoreWeights {
    let (alpha, beta) = x.split_at(x.len() - 1);
    ScoreWeights {
        alpha: attrs.names().iter().cloned().zip(alpha.iter().copied()).collect::<BTreeMap<_, _>>(),
        default_alpha: 1.0,
        beta: beta[0],
    }
}

/// Standard global-best PSO. Fitness evaluations run through `exec`; all
/// random draws happen sequentially in particle order, so the result is
/// the same for every execution strategy.
pub fn pso_search(
    prefs: &[Preference],
    candidates: &[CandidateProfile],
    attrs: &AttributeIndex,
    cfg: &PsoConfig,
    exec: Exec,
) -> Result<PsoResult, PsoError> {
    if candidates.is_empty() {
        return Err(PsoError::NoCandidates);
    }
    if prefs.is_empty() {
        return Err(PsoError::NoPreferences);
    }
    if let Some(p) = prefs.iter().find(|p| p.better.max(p.worse) >= candidates.len()) {
        return Err(PsoError::BadIndex(p.better.max(p.worse), candidates.len()));
    }
    let dim = attrs.len() + 1;
    let upper: Vec<f64> = (0..dim).map(|d| if d + 1 == dim { cfg.beta_max } else { cfg.alpha_max }).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.particles.max(1);
    let mut pos: Vec<Vec<f64>> = (0..n).map(|_| upper.iter().map(|u| rng.gen_range(0.0..=*u)).collect()).collect();
    let mut vel: Vec<Vec<f64>> = (0..n).map(|_| upper.iter().map(|u| rng.gen_range(-*u..=*u) * 0.1).collect()).collect();
    let eval = |pos: &[Vec<f64>]| exec.map(pos, |x| fitness(x, candidates, prefs));

    let mut fit = eval(&pos);
    let mut best_pos = pos.clone();
    let mut best_fit = fit.clone();
    let argmax = |f: &[f64]| (0..f.len()).fold(0, |b, i| if f[i] > f[b] { i } else { b });
    let mut g = argmax(&best_fit);
    let mut global = (best_pos[g].clone(), best_fit[g]);
    let mut history = Vec::with_capacity(cfg.iterations);
    for _ in 0..cfg.iterations {
        for i in 0..n {
            for d in 0..dim {
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                let v = cfg.inertia * vel[i][d]
                    + cfg.cognitive * r1 * (best_pos[i][d] - pos[i][d])
                    + cfg.social * r2 * (global.0[d] - pos[i][d]);
                let vmax = upper[d];
                vel[i][d] = v.clamp(-vmax, vmax);
                pos[i][d] = (pos[i][d] + vel[i][d]).clamp(0.0, upper[d]);
            }
        }
        fit = eval(&pos);
        for i in 0..n {
            if fit[i] > best_fit[i] {
                best_fit[i] = fit[i];
                best_pos[i] = pos[i].clone();
            }
        }
        g = argmax(&best_fit);
        if best_fit[g] > global.1 {
            global = (best_pos[g].clone(), best_fit[g]);
        }
        history.push(global.1);
    }
    Ok(PsoResult { weights: weights_from_position(&global.0, attrs), agreement: global.1, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aes::report::aes;
    use crate::aes::snapshot::{BBox, ElementSnapshot};

    fn gt() -> Vec<PageSnapshot> {
        vec![PageSnapshot::ok(
            "initial",
            vec![
                ElementSnapshot::new("h1", BBox::new(0.0, 0.0, 400.0, 50.0)).attr("font-size", "32px").attr("color", "#102030").eval(&["font-size", "color"]),
                ElementSnapshot::new("p", BBox::new(0.0, 60.0, 100.0, 20.0)).attr("text", "small print here").eval(&["text"]),
            ],
        )]
    }

    #[test]
    fn profile_matches_direct_scoring() {
        let gt = gt();
        let mut generated = gt[0].clone();
        generated.elements[0].attributes.insert("font-size".into(), "24px".into());
        generated.elements[1].attributes.insert("text".into(), "small print".into());
        let generation = Generation::pages(vec![generated]);
        let cfg = MatchConfig::default();
        let mut attrs = AttributeIndex::default();
        let profile = CandidateProfile::build(&generation, &gt, &cfg, &mut attrs).unwrap();
        let x = [0.3, 0.9, 0.6, 1.2];
        let w = weights_from_position(&x, &attrs);
        let direct = aes(&generation, &gt, &cfg, &w).unwrap().aes;
        assert!((profile.aes(&x[..3], x[3]) - direct).abs() < 1e-9);
    }

    #[test]
    fn agreement_counts_ties_half() {
        let prefs = [Preference { better: 0, worse: 1 }, Preference { better: 1, worse: 2 }];
        assert_eq!(agreement(&[2.0, 1.0, 1.0], &prefs), 0.75);
    }

    #[test]
    fn single_separable_pair_is_learned() {
        let gt = gt();
        let perfect = Generation::pages(gt.clone());
        let mut off = gt[0].clone();
        off.elements[0].attributes.insert("color".into(), "#ffffff".into());
        let cfg = MatchConfig::default();
        let mut attrs = AttributeIndex::default();
        let cands = vec![
            CandidateProfile::build(&perfect, &gt, &cfg, &mut attrs).unwrap(),
            CandidateProfile::build(&Generation::pages(vec![off]), &gt, &cfg, &mut attrs).unwrap(),
        ];
        let prefs = [Preference { better: 0, worse: 1 }];
        let r = pso_search(&prefs, &cands, &attrs, &PsoConfig { iterations: 5, ..Default::default() }, Exec::Sequential).unwrap();
        assert_eq!(r.agreement, 1.0);
        assert!(matches!(pso_search(&prefs, &[], &attrs, &PsoConfig::default(), Exec::Sequential), Err(PsoError::NoCandidates)));
    }

    #[test]
    fn strategies_agree() {
        let gt = gt();
        let cfg = MatchConfig::default();
        let mut attrs = AttributeIndex::default();
        let mut cands = Vec::new();
        for (i, size) in ["32px", "28px", "16px", "40px"].iter().enumerate() {
            let mut p = gt[0].clone();
            p.elements[0].attributes.insert("font-size".into(), (*size).into());
            p.elements[1].attributes.insert("text".into(), ["small print here", "small", "print here", "x"][i].into());
            cands.push(CandidateProfile::build(&Generation::pages(vec![p]), &gt, &cfg, &mut attrs).unwrap());
        }
        let prefs = [Preference { better: 0, worse: 1 }, Preference { better: 2, worse: 3 }, Preference { better: 1, worse: 3 }];
        let c = PsoConfig { iterations: 10, ..Default::default() };
        let a = pso_search(&prefs, &cands, &attrs, &c, Exec::Sequential).unwrap();
        let b = pso_search(&prefs, &cands, &attrs, &c, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
