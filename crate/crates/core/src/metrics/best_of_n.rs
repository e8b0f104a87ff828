use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::par::Exec;

/// How the expected best-of-N is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Estimator {
    /// Order-statistic expectation over all N-subsets.
    Exact,
    /// Mean over `draws` random N-subsets per level.
    MonteCarlo { draws: usize, seed: u64 },
}

/// Expected maximum of `n` samples drawn without replacement from `xs`.
///
/// Written as `x(1) + Σ_i (x(i) − x(i−1)) · P(max ≥ x(i))` over the sorted
/// samples, where `P(max < x(i)) = C(i−1, n) / C(m, n)` is built up as a
/// product of factors ≤ 1. Every term is then non-decreasing in `n` even
/// after rounding, so the estimate is monotone in `n` exactly.
pub fn expected_max(xs: &[f64], n: usize) -> Result<f64, MetricsError> {
    let m = xs.len();
    if n == 0 {
        return Err(MetricsError::ZeroN);
    }
    if n > m {
        return Err(MetricsError::TooFewSamples { n, available: m });
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut total = sorted[0];
    for i in 1..m {
        // i samples lie strictly below sorted[i] (0-based).
        let mut below = 1.0;
        for j in 0..n {
            below *= i.saturating_sub(j) as f64 / (m - j) as f64;
        }
        total += (sorted[i] - sorted[i - 1]) * (1.0 - below);
    }
    Ok(total)
}

fn mc_max(xs: &[f64], n: usize, draws: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    for _ in 0..draws {
        let best = sample(&mut rng, xs.len(), n).iter().map(|i| xs[i]).fold(f64::NEG_INFINITY, f64::max);
        sum += best;
    }
    sum / draws as f64
}

/// Mean over levels of the best of `n` sampled episodes per level.
pub fn best_of_n(samples: &[Vec<f64>], n: usize, estimator: Estimator, exec: Exec) -> Result<f64, MetricsError> {
    if samples.is_empty() {
        return Err(MetricsError::NoSamples);
    }
    if n == 0 {
        return Err(MetricsError::ZeroN);
    }
    if let Some(short) = samples.iter().find(|s| s.len() < n) {
        return Err(MetricsError::TooFewSamples { n, available: short.len() });
    }
    let per_level: Vec<f64> = match estimator {
        Estimator::Exact => samples.iter().map(|s| expected_max(s, n)).collect::<Result<_, _>>()?,
        Estimator::MonteCarlo { draws, seed } => {
            if draws == 0 {
                return Err(MetricsError::NoDraws);
            }
            exec.map_range(samples.len(), |i| mc_max(&samples[i], n, draws, seed.wrapping_add(i as u64)))
        }
    };
    Ok(per_level.iter().sum::<f64>() / per_level.len() as f64)
}

/// Best-of-N for every N from 1 to the smallest per-level sample count.
pub fn best_of_n_curve(samples: &[Vec<f64>], estimator: Estimator, exec: Exec) -> Result<Vec<(usize, f64)>, MetricsError> {
    let max_n = samples.iter().map(Vec::len).min().ok_or(MetricsError::NoSamples)?;
    (1..=max_n).map(|n| best_of_n(samples, n, estimator, exec).map(|v| (n, v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_of_three() {
        let v = expected_max(&[1.0, 2.0, 3.0], 2).unwrap();
        assert!((v - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn n_one_is_mean_and_n_all_is_max() {
        let xs = [4.0, 1.0, 9.0, 6.0];
        assert!((expected_max(&xs, 1).unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(expected_max(&xs, 4).unwrap(), 9.0);
    }

    #[test]
    fn too_many_requested() {
        assert_eq!(expected_max(&[1.0], 2), Err(MetricsError::TooFewSamples { n: 2, available: 1 }));
        assert!(best_of_n(&[vec![1.0, 2.0], vec![3.0]], 2, Estimator::Exact, Exec::Sequential).is_err());
    }

    #[test]
    fn monte_carlo_is_close_and_strategy_independent() {
        let samples = vec![vec![1.0, 2.0, 3.0], vec![0.0, 10.0, 5.0, 7.0]];
        let est = Estimator::MonteCarlo { draws: 20_000, seed: 3 };
        let seq = best_of_n(&samples, 2, est, Exec::Sequential).unwrap();
        let par = best_of_n(&samples, 2, est, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        let exact = best_of_n(&samples, 2, Estimator::Exact, Exec::Sequential).unwrap();
        assert!((seq - exact).abs() < 0.05);
    }
}
