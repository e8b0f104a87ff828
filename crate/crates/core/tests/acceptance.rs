//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arena_core::aes::{
    aes, agreement, assignment_value, attr_kind, hungarian_max, pso_search, AttrKind, AttrValue, AttributeIndex, BBox, CandidateProfile,
    ElementSnapshot, Generation, MatchConfig, PageSnapshot, Preference, PsoConfig, ScoreWeights,
};
use arena_core::football::{
    full_sweep, interception_term, run_episode as play_football, s_pass, AutoRenderConfig, BotController, Category, FootballRunConfig,
    RewardWeights, Vec2,
};
use arena_core::harness::{
    classify_errors, run_episode, Agent, AgentError, DecisionRequest, EpisodeResult, ErrorKind, IdleAgent, OutputRecord, PlannerConfig,
    PlannerMode, RandomAgent, Role, ScriptedAgent,
};
use arena_core::metrics::{aggregate, RunSpec};
use arena_core::par::Exec;
use arena_core::sokoban::{corpus_plan, generate_level, solve_bfs, Level, SokobanEnv, SokobanState, MAX_SOLUTION_STEPS, TIERS};
use arena_core::webui::WebTask;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Suite {
    failures: usize,
}

impl Suite {
    fn run(&mut self, name: &str, budget: Option<Duration>, check: impl FnOnce() -> Check) {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(detail), Some(b)) if took > b => Err(format!("{detail}; took {took:.1?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{took:.1?}]"),
            Err(detail) => {
                self.failures += 1;
                println!("FAIL  {name}: {detail} [{took:.1?}]");
            }
        }
    }
}

fn corpus() -> Vec<(String, Arc<Level>)> {
    let plan = corpus_plan(0);
    Exec::Parallel.map(&plan, |e| {
        let level = generate_level(e.tier, e.seed).expect("corpus level generates");
        // Round-trip through the file format, as the CLI would load it.
        let level = Level::parse(&level.to_file_text()).expect("level file parses");
        (format!("sokoban-t{}-{:03}", e.tier, e.index), Arc::new(level))
    })
}

fn global_cfg() -> PlannerConfig {
    PlannerConfig::standard(PlannerMode::Global, MAX_SOLUTION_STEPS)
}

fn sokoban_identities(levels: &[(String, Arc<Level>)]) -> Check {
    for (id, level) in levels {
        let plan = solve_bfs(level, MAX_SOLUTION_STEPS).ok_or_else(|| format!("{id}: solver found no plan"))?;
        ensure(plan.len() == level.optimal_steps, || format!("{id}: plan {} vs header {}", plan.len(), level.optimal_steps))?;
        let oracle_best: f64 = common::replay_rewards(level, &plan).iter().sum();
        ensure(oracle_best == level.r_best, || format!("{id}: r_best {} vs replay {oracle_best}", level.r_best))?;

        let names: Vec<&str> = plan.iter().map(|d| d.name()).collect();
        let mut optimal = ScriptedAgent::new([format!("### Analyze\nsolve\n### Actions\n{}", names.join(", "))]);
        let r = run_episode(&mut optimal, &mut SokobanEnv::new(id.clone(), level.clone()), &global_cfg()).map_err(|e| e.to_string())?;
        ensure(r.score == 100.0, || format!("{id}: optimal plan scored {}", r.score))?;

        let r = run_episode(&mut IdleAgent, &mut SokobanEnv::new(id.clone(), level.clone()), &global_cfg()).map_err(|e| e.to_string())?;
        ensure(r.score == 100.0 - level.r_best, || format!("{id}: idle scored {} with r_best {}", r.score, level.r_best))?;
    }
    Ok(format!("{} levels: optimal = 100 and idle = 100 - r_best exactly", levels.len()))
}

fn pruned_vs_unpruned() -> Check {
    let mut suite: Vec<Level> = Vec::new();
    suite.extend(common::placements(&common::room4(None), 1));
    for r in 1..=4 {
        for c in 1..=4 {
            suite.extend(common::placements(&common::room4(Some((r, c))), 1));
        }
    }
    let one_box = suite.len();
    suite.extend(common::placements(&common::room4x3(), 2));
    suite.extend(common::placements(&common::room4(None), 2));
    let mismatches: Vec<usize> = Exec::Parallel
        .map_range(suite.len(), |i| {
            let level = &suite[i];
            let pruned = solve_bfs(level, MAX_SOLUTION_STEPS).map(|p| p.len());
            (pruned != common::unpruned_bfs(level, MAX_SOLUTION_STEPS)).then_some(i)
        })
        .into_iter()
        .flatten()
        .collect();
    let solvable = suite.iter().filter(|l| l.boxes != l.targets).count();
    match mismatches.first() {
        None => Ok(format!("{} levels ({one_box} one-box, {} two-box, {solvable} unsolved at start) all agree", suite.len(), suite.len() - one_box)),
        Some(&i) => Err(format!("{} of {} disagree, e.g.\n{}", mismatches.len(), suite.len(), suite[i].grid_text(&suite[i].boxes, suite[i].player))),
    }
}

fn online_run<A: Agent<SokobanState>>(levels: &[(String, Arc<Level>)], make: impl Fn(usize, usize) -> A + Sync) -> Vec<EpisodeResult> {
    let cfg = PlannerConfig::standard(PlannerMode::Online, MAX_SOLUTION_STEPS);
    let jobs: Vec<(usize, usize)> = (0..3).flat_map(|k| (0..levels.len()).map(move |i| (i, k))).collect();
    Exec::Parallel.map(&jobs, |&(i, k)| {
        let (id, level) = &levels[i];
        let mut agent = make(i, k);
        let mut r = run_episode(&mut agent, &mut SokobanEnv::new(id.clone(), level.clone()), &cfg).expect("built-in agents never fail");
        r.repeat = k;
        r
    })
}

fn baseline_ordering(levels: &[(String, Arc<Level>)]) -> Check {
    let idle = online_run(levels, |_, _| IdleAgent);
    let random = online_run(levels, |i, k| RandomAgent::new((k * 1000 + i) as u64));
    for r in &idle {
        let level = &levels.iter().find(|(id, _)| *id == r.level_id).expect("known level").1;
        ensure(r.score == 100.0 - level.r_best, || format!("{}: online idle scored {}", r.level_id, r.score))?;
    }
    let spec = RunSpec::standard("sokoban", PlannerMode::Online);
    let idle = aggregate(&idle, &spec).map_err(|e| e.to_string())?;
    let random = aggregate(&random, &spec).map_err(|e| e.to_string())?;
    let band = 2.0 * (idle.stderr.powi(2) + random.stderr.powi(2)).sqrt();
    let margin = random.mean - idle.mean;
    let detail = format!(
        "random {:.2} (stderr {:.3}) vs idle {:.2} (stderr {:.3}); margin {margin:.2} vs 2x stderr {band:.3}",
        random.mean, random.stderr, idle.mean, idle.stderr
    );
    ensure(idle.is_complete() && random.is_complete(), || "incomplete run".into())?;
    ensure(margin > band, || detail.clone())?;
    Ok(detail)
}

fn brute_force(m: &[Vec<f64>]) -> f64 {
    fn go(m: &[Vec<f64>], row: usize, used: &mut Vec<bool>, rows_left: usize) -> f64 {
        let cols = m[0].len();
        let cols_left = used.iter().filter(|u| !**u).count();
        if row == m.len() {
            return 0.0;
        }
        let mut best = f64::NEG_INFINITY;
        // Skipping a row is allowed only while enough columns remain for
        // the rows that must still be matched.
        if rows_left > cols_left {
            best = go(m, row + 1, used, rows_left - 1);
        }
        for j in 0..cols {
            if !used[j] {
                used[j] = true;
                best = best.max(m[row][j] + go(m, row + 1, used, rows_left - 1));
                used[j] = false;
            }
        }
        best
    }
    go(m, 0, &mut vec![false; m[0].len()], m.len())
}

fn hungarian_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut shapes = BTreeMap::new();
    for trial in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        // Integers and eighths keep every sum exact, so equality is exact.
        let m: Vec<Vec<f64>> = (0..r)
            .map(|_| (0..c).map(|_| if trial % 2 == 0 { rng.gen_range(-50..=50) as f64 } else { rng.gen_range(-64..=64) as f64 / 8.0 }).collect())
            .collect();
        let assignment = hungarian_max(&m);
        let mut cols: Vec<usize> = assignment.iter().flatten().copied().collect();
        let assigned = cols.len();
        cols.sort_unstable();
        cols.dedup();
        ensure(cols.len() == assigned && assigned == r.min(c), || format!("trial {trial}: assignment {assignment:?} is not a full matching"))?;
        let got = assignment_value(&m, &assignment);
        let want = brute_force(&m);
        ensure(got == want, || format!("trial {trial}: {got} vs brute force {want} on {m:?}"))?;
        *shapes.entry((r, c)).or_insert(0) += 1;
    }
    Ok(format!("1000 matrices over {} shapes up to 6x6 match exactly", shapes.len()))
}

fn fixtures() -> Vec<WebTask> {
    WebTask::load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/webui")).expect("fixtures load")
}

/// A clearly different value of the same kind.
fn perturb(name: &str, value: &AttrValue) -> AttrValue {
    let text = value.as_text();
    match attr_kind(name, value) {
        AttrKind::Text => AttrValue::from(format!("{text} plus more words").as_str()),
        AttrKind::Discrete => AttrValue::from(format!("{text}-other").as_str()),
        AttrKind::Color => AttrValue::from(if text == "#ffffff" { "#000000" } else { "#ffffff" }),
        AttrKind::Continuous => match value {
            AttrValue::Number(n) => AttrValue::Number(n * 3.0 + 7.0),
            AttrValue::Text(s) => {
                let scaled: Vec<String> = s
                    .split_whitespace()
                    .map(|part| {
                        let digits: String = part.chars().take_while(|c| c.is_ascii_digit() || *c == '.').collect();
                        let unit = &part[digits.len()..];
                        format!("{}{unit}", digits.parse::<f64>().unwrap_or(0.0) * 3.0 + 7.0)
                    })
                    .collect();
                AttrValue::from(scaled.join(" ").as_str())
            }
        },
    }
}

fn aes_identities() -> Check {
    let (cfg, w) = (MatchConfig::default(), ScoreWeights::default());
    let tasks = fixtures();
    let mut perturbations = 0;
    for task in &tasks {
        let own = aes(&Generation::pages(task.gt.clone()), &task.gt, &cfg, &w).map_err(|e| e.to_string())?;
        ensure(own.aes == 100.0 && own.total() == 100.0, || format!("{}: self-score {}", task.id, own.aes))?;
        for (p, page) in task.gt.iter().enumerate() {
            for (e, element) in page.elements.iter().enumerate() {
                for name in &element.eval_by {
                    let Some(value) = element.attributes.get(name) else { continue };
                    let mut pages = task.gt.clone();
                    pages[p].elements[e].attributes.insert(name.clone(), perturb(name, value));
                    let r = aes(&Generation::pages(pages), &task.gt, &cfg, &w).map_err(|e| e.to_string())?;
                    ensure(r.aes < 100.0, || format!("{}/{}: changing {name} on element {e} kept {}", task.id, page.action_id, r.aes))?;
                    ensure(r.total() == 100.0, || format!("{}: buckets + AES = {}", task.id, r.total()))?;
                    perturbations += 1;
                }
            }
        }
        for generation in [Generation::Unparsed, Generation::pages(vec![]), Generation::pages(task.gt[..1].to_vec())] {
            let r = aes(&generation, &task.gt, &cfg, &w).map_err(|e| e.to_string())?;
            ensure(r.total() == 100.0, || format!("{}: buckets + AES = {} on a failed generation", task.id, r.total()))?;
        }
    }
    Ok(format!("{} fixtures self-score 100; {perturbations} single-attribute perturbations all lower the score; buckets + AES = 100", tasks.len()))
}

const PSO_ATTRS: [&str; 5] = ["color", "background-color", "font-size", "text", "border-radius"];

fn pso_page() -> Vec<PageSnapshot> {
    let sizes = [(600.0, 80.0), (300.0, 40.0), (120.0, 30.0), (800.0, 200.0), (60.0, 20.0), (400.0, 120.0)];
    let elements = sizes
        .iter()
        .enumerate()
        .map(|(i, &(w, h))| {
            ElementSnapshot::new("div", BBox::new(0.0, 220.0 * i as f64, w, h))
                .attr("color", "#203040")
                .attr("background-color", "#e0e8f0")
                .attr("font-size", "20px")
                .attr("text", format!("element number {i} with some words").as_str())
                .attr("border-radius", "8px")
                .eval(&PSO_ATTRS)
        })
        .collect();
    vec![PageSnapshot::ok("initial", elements)]
}

fn pso_candidate(gt: &[PageSnapshot], rng: &mut ChaCha8Rng) -> Generation {
    let mut page = gt[0].clone();
    for _ in 0..rng.gen_range(1..=3) {
        let e = rng.gen_range(0..page.elements.len());
        let attr = PSO_ATTRS[rng.gen_range(0..PSO_ATTRS.len())];
        let s: f64 = rng.gen_range(0.1..1.0);
        let value = match attr {
            "color" | "background-color" => {
                let v = (255.0 * s) as u8;
                format!("#{v:02x}{:02x}{v:02x}", 255 - v)
            }
            "font-size" => format!("{}px", 20.0 * (1.0 + 2.0 * s)),
            "border-radius" => format!("{}px", 8.0 * (1.0 + 4.0 * s)),
            _ => {
                let words = ["element", "number", "with", "some", "words", "and", "more"];
                let keep = ((1.0 - s) * 6.0) as usize;
                let text = page.elements[e].attributes["text"].as_text();
                let mut out: Vec<&str> = text.split_whitespace().take(keep).collect();
                out.extend(words.iter().skip(keep % words.len()).take(6 - keep));
                out.join(" ")
            }
        };
        page.elements[e].attributes.insert(attr.to_string(), AttrValue::from(value.as_str()));
    }
    Generation::pages(vec![page])
}

struct PsoTrial {
    searched: f64,
    baseline: f64,
}

fn pso_trial(seed: u64) -> Result<PsoTrial, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gt = pso_page();
    let cfg = MatchConfig::default();
    // The hidden rater cares about two attributes and barely notices the
    // rest; calibration has to discover which two.
    let cared = rand::seq::index::sample(&mut rng, PSO_ATTRS.len(), 2).into_vec();
    let hidden = ScoreWeights {
        alpha: PSO_ATTRS
            .iter()
            .enumerate()
            .map(|(k, a)| (a.to_string(), if cared.contains(&k) { rng.gen_range(0.5..1.0) } else { rng.gen_range(0.0..0.05) }))
            .collect(),
        default_alpha: 1.0,
        beta: rng.gen_range(0.0..2.0),
    };
    let generations: Vec<Generation> = (0..30).map(|_| pso_candidate(&gt, &mut rng)).collect();
    let hidden_scores: Vec<f64> =
        generations.iter().map(|g| aes(g, &gt, &cfg, &hidden).map(|r| r.aes)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mut prefs = Vec::new();
    for i in 0..generations.len() {
        for j in 0..i {
            let d = hidden_scores[i] - hidden_scores[j];
            if d.abs() > 0.25 {
                prefs.push(if d > 0.0 { Preference { better: i, worse: j } } else { Preference { better: j, worse: i } });
            }
        }
    }
    let mut attrs = AttributeIndex::default();
    let candidates: Vec<CandidateProfile> =
        generations.iter().map(|g| CandidateProfile::build(g, &gt, &cfg, &mut attrs)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let result = pso_search(&prefs, &candidates, &attrs, &PsoConfig { seed, ..Default::default() }, Exec::Parallel).map_err(|e| e.to_string())?;
    // Re-score with the returned weights through the public scorer.
    let searched_scores: Vec<f64> = generations.iter().map(|g| aes(g, &gt, &cfg, &result.weights).map(|r| r.aes)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let searched = agreement(&searched_scores, &prefs);
    let draws = 50;
    let mut baseline = 0.0;
    for _ in 0..draws {
        let w = ScoreWeights {
            alpha: PSO_ATTRS.iter().map(|a| (a.to_string(), rng.gen::<f64>())).collect(),
            default_alpha: 1.0,
            beta: rng.gen_range(0.0..2.0),
        };
        let scores: Vec<f64> = generations.iter().map(|g| aes(g, &gt, &cfg, &w).map(|r| r.aes)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        baseline += agreement(&scores, &prefs) / draws as f64;
    }
    Ok(PsoTrial { searched, baseline })
}

fn pso_calibration() -> Check {
    let trials: Vec<PsoTrial> = (0..10).map(pso_trial).collect::<Result<_, _>>()?;
    let mean = |f: fn(&PsoTrial) -> f64| trials.iter().map(f).sum::<f64>() / trials.len() as f64;
    let (searched, baseline) = (mean(|t| t.searched), mean(|t| t.baseline));
    let worst = trials.iter().map(|t| t.searched).fold(f64::INFINITY, f64::min);
    let detail = format!("10 seeds: searched agreement mean {searched:.3} (min {worst:.3}), random weights mean {baseline:.3}");
    ensure(searched >= 0.90 && baseline <= 0.75, || detail.clone())?;
    Ok(detail)
}

fn football_units() -> Check {
    let w = RewardWeights::default();
    ensure(w.horizon == 400, || format!("horizon {}", w.horizon))?;
    let mid = interception_term(200, &w);
    ensure(mid == 10.0, || format!("interception at t=200: {mid}"))?;
    let survival = interception_term(400, &w);
    ensure(survival == 20.0, || format!("survival: {survival}"))?;
    // One opponent 10 units straight toward goal: L = 10, cos = 1.
    let open = s_pass(Vec2::new(-29.0, 0.0), &[Vec2::new(-19.0, 0.0)], &w);
    ensure(open == 10.0 / 11.0, || format!("s_pass: {open}"))?;
    Ok("interception(200) = 10, survival = 20, s_pass(L=10, cos=1) = 10/11".into())
}

fn auto_render() -> Check {
    let sweep = full_sweep().map_err(|e| e.to_string())?;
    let play = |auto: Option<AutoRenderConfig>| {
        let cfg = FootballRunConfig { auto_render: auto, images: false, ..Default::default() };
        Exec::Parallel.map(&sweep, |s| play_football(s, &mut BotController::default(), &cfg).expect("bots never fail"))
    };
    let on = play(Some(AutoRenderConfig::default()));
    let off = play(None);
    let decisions = |rs: &[EpisodeResult]| rs.iter().map(|r| r.decisions).sum::<usize>() as f64;
    let mean = |rs: &[EpisodeResult]| rs.iter().map(|r| r.score).sum::<f64>() / rs.len() as f64;
    let reduction = 1.0 - decisions(&on) / decisions(&off);
    let diff = (mean(&on) - mean(&off)).abs() / mean(&off).abs();
    let detail = format!(
        "{} scenarios: decisions {} -> {} ({:.1}% fewer), mean reward {:.2} vs {:.2} ({:.1}% apart)",
        sweep.len(),
        decisions(&off),
        decisions(&on),
        100.0 * reduction,
        mean(&on),
        mean(&off),
        100.0 * diff
    );
    ensure(sweep.len() >= 100 && reduction >= 0.60 && diff <= 0.15, || detail.clone())?;
    Ok(detail)
}

/// Records what the agent is shown at every decision.
struct WindowProbe {
    seen: Vec<(usize, usize, Vec<usize>, Vec<String>, Vec<usize>)>,
    replies: Vec<String>,
}

impl Agent<SokobanState> for WindowProbe {
    fn act(&mut self, req: &DecisionRequest<'_, SokobanState>) -> Result<String, AgentError> {
        let agent_turns: Vec<String> = req.context.iter().filter(|t| t.role == Role::Agent).map(|t| t.text.clone()).collect();
        let shown: Vec<usize> = req.context.iter().filter_map(|t| t.observation).collect();
        let with_images: Vec<usize> = req.observations.iter().filter(|o| o.image.is_some()).map(|o| o.step).collect();
        self.seen.push((req.step, req.observations.len(), shown, agent_turns, with_images));
        // Bounce between two moves so the episode runs its full length.
        let reply = format!("# analyze\nstep {}\n# action\n{}", req.step, if req.step % 2 == 0 { "Left" } else { "Right" });
        self.replies.push(reply.clone());
        Ok(reply)
    }
}

fn harness_shape() -> Check {
    let level = Arc::new(Level::parse_grid("#########\n#       #\n# @ $ . #\n#       #\n#########\n").map_err(|e| e.to_string())?);
    let mut grid = 0;
    for am in [1, 5, 10] {
        for om in [1, 2, 3].into_iter().filter(|&om| om <= am) {
            let cfg = PlannerConfig { action_memory: am, observation_memory: om, ..PlannerConfig::standard(PlannerMode::Online, 14) };
            let mut probe = WindowProbe { seen: Vec::new(), replies: Vec::new() };
            let r = run_episode(&mut probe, &mut SokobanEnv::new("window", level.clone()), &cfg).map_err(|e| e.to_string())?;
            ensure(r.decisions == 14, || format!("AM={am} OM={om}: {} decisions", r.decisions))?;
            for (step, n_obs, shown, agent_turns, with_images) in &probe.seen {
                let t = *step;
                let kept = (t - 1).min(am);
                let want_turns: Vec<String> = probe.replies[t - 1 - kept..t - 1].to_vec();
                ensure(*agent_turns == want_turns, || format!("AM={am} OM={om} t={t}: {} prior replies in context, want {kept}", agent_turns.len()))?;
                let visible = t.min(om);
                let want_shown: Vec<usize> = (t + 1 - visible..=t).collect();
                ensure(*shown == want_shown, || format!("AM={am} OM={om} t={t}: images at {shown:?}, want {want_shown:?}"))?;
                ensure(*n_obs == visible && *with_images == want_shown, || format!("AM={am} OM={om} t={t}: observations {with_images:?}"))?;
            }
            grid += 1;
        }
    }

    let record = |parsed: Option<&str>| OutputRecord { raw: String::new(), actions: parsed.map(|a| vec![a.to_string()]) };
    let mut boundary_hits = 0;
    for n in 1..=60usize {
        for bad in 0..=n {
            let outputs: Vec<OutputRecord> = (0..n).map(|i| record((i >= bad).then_some(if i % 2 == 0 { "Up" } else { "Down" }))).collect();
            let invalid = matches!(classify_errors(&outputs).kind, ErrorKind::InvalidActions | ErrorKind::Ife);
            let want = bad as f64 / n as f64 > 0.9;
            ensure(invalid == want, || format!("{bad}/{n} unparsed: invalid={invalid}"))?;
            if bad * 10 == n * 9 {
                boundary_hits += 1;
            }
        }
        for same in 0..=n {
            let outputs: Vec<OutputRecord> = (0..n).map(|i| record(Some(if i < same { "Up" } else if i % 2 == 0 { "Down" } else { "Left" }))).collect();
            let repeating = matches!(classify_errors(&outputs).kind, ErrorKind::RepeatingActions | ErrorKind::Ife);
            let mode = same.max((n - same).div_ceil(2));
            let want = mode as f64 / n as f64 >= 0.9;
            ensure(repeating == want, || format!("{same}/{n} identical: repeating={repeating}"))?;
        }
    }
    let at = |bad: usize, n: usize| classify_errors(&(0..n).map(|i| record((i >= bad).then_some("Up"))).collect::<Vec<_>>()).kind;
    ensure(at(9, 10) == ErrorKind::RepeatingActions && at(10, 10) == ErrorKind::InvalidActions, || "90% unparsed boundary".into())?;
    Ok(format!("{grid} (AM, OM) settings hold the window; thresholds exact on {boundary_hits} boundary cases"))
}

fn corpus_counts(levels: &[(String, Arc<Level>)]) -> Check {
    let mut by_tier: BTreeMap<u8, usize> = BTreeMap::new();
    for (_, level) in levels {
        *by_tier.entry(level.tier).or_default() += 1;
        ensure(level.optimal_steps <= MAX_SOLUTION_STEPS, || format!("tier {} level needs {} steps", level.tier, level.optimal_steps))?;
    }
    let want: BTreeMap<u8, usize> = TIERS.iter().map(|t| (t.tier, t.corpus_count)).collect();
    ensure(levels.len() == 182 && by_tier.len() == 8 && by_tier == want, || format!("{} levels by tier {by_tier:?}", levels.len()))?;
    let sweep = full_sweep().map_err(|e| e.to_string())?;
    let mut cells: BTreeMap<(Category, u8), usize> = BTreeMap::new();
    for s in &sweep {
        *cells.entry((s.category, s.region.number())).or_default() += 1;
    }
    ensure(sweep.len() == 108 && cells.len() == 27 && cells.values().all(|&n| n == 4), || format!("{} scenarios over {} cells", sweep.len(), cells.len()))?;
    Ok("182 levels over 8 tiers; 108 scenarios = 3 categories x 9 regions x 4".into())
}

fn main() -> ExitCode {
    let mut suite = Suite { failures: 0 };
    let start = Instant::now();
    let levels = corpus();
    println!("generated {} corpus levels in {:.1?}", levels.len(), start.elapsed());

    suite.run("sokoban metric identities", Some(Duration::from_secs(60)), || sokoban_identities(&levels));
    suite.run("pruned BFS optimality", Some(Duration::from_secs(120)), pruned_vs_unpruned);
    suite.run("baseline ordering", Some(Duration::from_secs(300)), || baseline_ordering(&levels));
    suite.run("hungarian oracle", None, hungarian_oracle);
    suite.run("AES identities", None, aes_identities);
    suite.run("PSO calibration", Some(Duration::from_secs(300)), pso_calibration);
    suite.run("football reward units", None, football_units);
    suite.run("auto-rendering", Some(Duration::from_secs(600)), auto_render);
    suite.run("harness shape", None, harness_shape);
    suite.run("corpus counts", None, || corpus_counts(&levels));

    println!("{} failed, total {:.1?}", suite.failures, start.elapsed());
    if suite.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
