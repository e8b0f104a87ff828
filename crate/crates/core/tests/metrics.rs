use proptest::prelude::*;

use arena_core::harness::{ErrorClassification, ErrorKind, EpisodeResult, PlannerMode, Termination, Transcript};
use arena_core::metrics::{aggregate, best_of_n, best_of_n_curve, expected_max, markdown_report, Estimator, Report, RunSpec};
use arena_core::par::Exec;

fn episode(level: &str, repeat: usize, score: f64, kind: ErrorKind) -> EpisodeResult {
    EpisodeResult {
        env: "sokoban".into(),
        level_id: level.into(),
        mode: PlannerMode::Online,
        repeat,
        seed: repeat as u64,
        score,
        rewards: vec![],
        decisions: 1,
        agent_calls: 1,
        unparsed_decisions: 0,
        elapsed: 1,
        termination: Termination::Terminal,
        classification: ErrorClassification { kind, unparsed_fraction: 0.0, mode_action_fraction: 0.0 },
        aes_buckets: None,
        outputs: vec![],
        transcript: Transcript::default(),
    }
}

/// Average of the maximum over every `n`-subset, by enumeration.
fn subset_mean_max(xs: &[f64], n: usize) -> f64 {
    let m = xs.len();
    let (mut total, mut count) = (0.0, 0usize);
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize == n {
            total += (0..m).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).fold(f64::NEG_INFINITY, f64::max);
            count += 1;
        }
    }
    total / count as f64
}

#[test]
fn report_mentions_every_run() {
    let idle: Vec<_> = (0..3).map(|k| episode("a", k, 40.0, ErrorKind::InvalidActions)).collect();
    let random: Vec<_> = (0..3).map(|k| episode("a", k, 40.0 + k as f64, ErrorKind::None)).collect();
    let spec = RunSpec::standard("sokoban", PlannerMode::Online);
    let mut a = aggregate(&idle, &spec).unwrap();
    a.label = "idle".into();
    let mut b = aggregate(&random, &spec).unwrap();
    b.label = "random".into();
    let md = markdown_report(&[a.clone(), b.clone()]);
    assert!(md.contains("| idle | sokoban | online | 40.00 | 0.00 | 3 | 1 | 100.0 | 100.0 | 0.0 | yes |"), "{md}");
    assert!(md.contains("| random | sokoban | online | 41.00 |"));
    let report = Report::new(vec![a, b]);
    assert_eq!(serde_json::from_str::<Report>(&report.to_json()).unwrap(), report);
}

proptest! {
    #[test]
    fn exact_estimator_matches_enumeration(xs in prop::collection::vec(-50.0..50.0f64, 1..10), pick in any::<prop::sample::Index>()) {
        let n = 1 + pick.index(xs.len());
        let got = expected_max(&xs, n).unwrap();
        prop_assert!((got - subset_mean_max(&xs, n)).abs() < 1e-9);
    }

    #[test]
    fn best_of_n_is_monotone(levels in prop::collection::vec(prop::collection::vec(0.0..100.0f64, 5..12), 1..6)) {
        let curve = best_of_n_curve(&levels, Estimator::Exact, Exec::Sequential).unwrap();
        prop_assert_eq!(curve.len(), levels.iter().map(Vec::len).min().unwrap());
        prop_assert!(curve.windows(2).all(|w| w[0].1 <= w[1].1), "{:?}", curve);
    }

    #[test]
    fn monte_carlo_is_strategy_independent(levels in prop::collection::vec(prop::collection::vec(0.0..100.0f64, 3..6), 1..4), seed in any::<u64>()) {
        let est = Estimator::MonteCarlo { draws: 200, seed };
        prop_assert_eq!(best_of_n(&levels, 2, est, Exec::Sequential).unwrap(), best_of_n(&levels, 2, est, Exec::Parallel).unwrap());
    }

    #[test]
    fn aggregate_ignores_input_order(
        scores in prop::collection::vec(prop::collection::vec(0.0..100.0f64, 3), 1..8),
        kinds in prop::collection::vec(prop::sample::select(vec![ErrorKind::None, ErrorKind::InvalidActions, ErrorKind::RepeatingActions, ErrorKind::Ife]), 24),
        seed in any::<u64>(),
    ) {
        let mut episodes = Vec::new();
        for (l, row) in scores.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                episodes.push(episode(&format!("level-{l}"), k, *s, kinds[(l * 3 + k) % kinds.len()]));
            }
        }
        let spec = RunSpec::standard("sokoban", PlannerMode::Online);
        let before = aggregate(&episodes, &spec).unwrap();
        use rand::{seq::SliceRandom, SeedableRng};
        episodes.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let after = aggregate(&episodes, &spec).unwrap();
        prop_assert_eq!(before, after);
    }
}
