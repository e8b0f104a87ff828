use std::path::{Path, PathBuf};

use proptest::prelude::*;

use arena_core::aes::{
    aes, assignment_value, attr_similarity, giou, hungarian_max, AttrKind, AttrValue, BBox, ElementSnapshot, Generation, MatchConfig,
    PageSnapshot, PageStatus, ScoreWeights, Viewport,
};
use arena_core::webui::{load_generation, WebTask};

fn fixture_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/webui")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arena-aes-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn fixtures_load_with_initial_page_first() {
    let tasks = WebTask::load_corpus(&fixture_root()).unwrap();
    let ids: Vec<&str> = tasks.iter().map(|t| t.id.as_str()).collect();
    assert_eq!(ids, ["landing", "pricing", "todo"]);
    for t in &tasks {
        assert_eq!(t.gt[0].action_id, "initial");
        assert_eq!(t.gt[0].viewport, Viewport::default());
        assert!(!t.description.trim().is_empty());
        let r = aes(&Generation::pages(t.gt.clone()), &t.gt, &MatchConfig::default(), &ScoreWeights::default()).unwrap();
        assert_eq!(r.aes, 100.0);
    }
}

#[test]
fn snapshot_json_format() {
    let text = r##"{
        "action_id": "initial",
        "status": "OK",
        "viewport": {"w": 1280, "h": 800},
        "elements": [
            {"tag": "h1", "bbox": [10, 20, 300, 40], "children": 0, "filter_by": "text",
             "eval_by": ["text", "color"], "attributes": {"text": "Hello", "color": "#112233", "opacity": 0.5}}
        ]
    }"##;
    let page = PageSnapshot::from_json(text).unwrap();
    assert_eq!(page.elements[0].bbox, BBox::new(10.0, 20.0, 300.0, 40.0));
    assert_eq!(page.elements[0].attributes["opacity"], AttrValue::Number(0.5));
    assert_eq!(PageSnapshot::from_json(&page.to_json()).unwrap(), page);
    let failed = PageSnapshot::from_json(r#"{"action_id": "click", "status": "RenderError", "elements": []}"#).unwrap();
    assert_eq!(failed.status, PageStatus::RenderError);
    assert!(PageSnapshot::from_json(r#"{"action_id": "x", "status": "OK", "elements": [{"tag": "p", "bbox": [0, 0, 1, 1], "eval_by": ["color"]}]}"#).is_err());
}

#[test]
fn generated_snapshots_from_disk() {
    let task = WebTask::load(&fixture_root().join("todo")).unwrap();
    let (cfg, w) = (MatchConfig::default(), ScoreWeights::default());

    assert_eq!(load_generation(&scratch("missing").join("nope")).unwrap(), Generation::Unparsed);

    let dir = scratch("copy");
    for page in &task.gt {
        std::fs::write(dir.join(format!("{}.json", page.action_id)), page.to_json()).unwrap();
    }
    assert_eq!(aes(&load_generation(&dir).unwrap(), &task.gt, &cfg, &w).unwrap().aes, 100.0);

    std::fs::write(dir.join("add-task.json"), "{ not json").unwrap();
    let r = aes(&load_generation(&dir).unwrap(), &task.gt, &cfg, &w).unwrap();
    assert_eq!((r.aes, r.buckets.parse), (50.0, 50.0));

    std::fs::remove_file(dir.join("add-task.json")).unwrap();
    let r = aes(&load_generation(&dir).unwrap(), &task.gt, &cfg, &w).unwrap();
    assert_eq!((r.aes, r.buckets.interaction), (50.0, 50.0));
    assert_eq!(r.pages[1].status, PageStatus::InteractionError);
    std::fs::remove_dir_all(&dir).ok();
}

fn bbox() -> impl Strategy<Value = BBox> {
    (-500.0..500.0f64, -500.0..500.0f64, 0.0..400.0f64, 0.0..400.0f64).prop_map(|(x, y, w, h)| BBox::new(x, y, w, h))
}

fn value_of(kind: AttrKind) -> BoxedStrategy<AttrValue> {
    match kind {
        AttrKind::Text => "[a-z]{0,6}( [a-z]{1,6}){0,4}".prop_map(|s| AttrValue::from(s.as_str())).boxed(),
        AttrKind::Discrete => "[a-z-]{1,10}".prop_map(|s| AttrValue::from(s.as_str())).boxed(),
        AttrKind::Continuous => prop_oneof![
            (0.0..200.0f64).prop_map(AttrValue::Number),
            (0u32..200, prop::sample::select(vec!["px", "em", "%"])).prop_map(|(n, u)| AttrValue::from(format!("{n}{u}").as_str())),
        ]
        .boxed(),
        AttrKind::Color => (any::<u8>(), any::<u8>(), any::<u8>()).prop_map(|(r, g, b)| AttrValue::from(format!("#{r:02x}{g:02x}{b:02x}").as_str())).boxed(),
    }
}

fn kind() -> impl Strategy<Value = AttrKind> {
    prop::sample::select(vec![AttrKind::Text, AttrKind::Discrete, AttrKind::Continuous, AttrKind::Color])
}

fn page(id: &str) -> impl Strategy<Value = PageSnapshot> {
    let id = id.to_string();
    prop::collection::vec((bbox(), "#[0-9a-f]{6}", 8u32..40), 1..7).prop_map(move |els| {
        let elements = els
            .into_iter()
            .map(|(b, color, size)| {
                ElementSnapshot::new("div", b).attr("color", color.as_str()).attr("font-size", format!("{size}px").as_str()).eval(&["color", "font-size"])
            })
            .collect();
        PageSnapshot::ok(id.clone(), elements)
    })
}

fn brute_force(m: &[Vec<f64>]) -> f64 {
    fn perms(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for j in 0..n {
            if !prefix.contains(&j) {
                prefix.push(j);
                perms(n, k, prefix, out);
                prefix.pop();
            }
        }
    }
    let (r, c) = (m.len(), m[0].len());
    let mut all = Vec::new();
    if r <= c {
        perms(c, r, &mut Vec::new(), &mut all);
        all.iter().map(|p| p.iter().enumerate().map(|(i, &j)| m[i][j]).sum::<f64>()).fold(f64::NEG_INFINITY, f64::max)
    } else {
        perms(r, c, &mut Vec::new(), &mut all);
        all.iter().map(|p| p.iter().enumerate().map(|(j, &i)| m[i][j]).sum::<f64>()).fold(f64::NEG_INFINITY, f64::max)
    }
}

proptest! {
    #[test]
    fn giou_is_symmetric_and_bounded(a in bbox(), b in bbox()) {
        let (ab, ba) = (giou(&a, &b), giou(&b, &a));
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&ab));
    }

    #[test]
    fn giou_with_itself_is_one(a in bbox()) {
        prop_assume!(a.area() > 0.0);
        prop_assert!((giou(&a, &a) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn similarity_in_unit_interval(k in kind(), pair in kind().prop_flat_map(|k| (value_of(k), value_of(k)))) {
        let (a, b) = pair;
        let s = attr_similarity(k, &a, &b);
        prop_assert!((0.0..=1.0).contains(&s), "{:?} {:?} {:?} -> {}", k, a, b, s);
    }

    #[test]
    fn similarity_of_equal_values_is_one(v in kind().prop_flat_map(|k| (Just(k), value_of(k)))) {
        let (k, v) = v;
        prop_assert_eq!(attr_similarity(k, &v, &v), 1.0);
    }

    #[test]
    fn hungarian_equals_brute_force(m in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i32..=20, c), r))) {
        let m: Vec<Vec<f64>> = m.into_iter().map(|row| row.into_iter().map(f64::from).collect()).collect();
        prop_assert_eq!(assignment_value(&m, &hungarian_max(&m)), brute_force(&m));
    }

    #[test]
    fn element_order_does_not_matter(gt in page("initial"), noise in prop::collection::vec((0.0..20.0f64, "#[0-9a-f]{6}"), 6), seed in any::<u64>()) {
        let mut generated = gt.clone();
        for (e, (dx, color)) in generated.elements.iter_mut().zip(&noise) {
            e.bbox.x += dx;
            e.attributes.insert("color".into(), AttrValue::from(color.as_str()));
        }
        let (cfg, w) = (MatchConfig::default(), ScoreWeights::default());
        let gt = vec![gt];
        let before = aes(&Generation::pages(vec![generated.clone()]), &gt, &cfg, &w).unwrap();
        use rand::{seq::SliceRandom, SeedableRng};
        generated.elements.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let after = aes(&Generation::pages(vec![generated]), &gt, &cfg, &w).unwrap();
        prop_assert!((before.aes - after.aes).abs() < 1e-9);
    }

    #[test]
    fn removing_an_element_never_helps(gt in page("initial"), pick in any::<prop::sample::Index>(), beta in 0.0..2.0f64) {
        let (cfg, w) = (MatchConfig::default(), ScoreWeights { beta, ..Default::default() });
        let gt = vec![gt];
        let full = aes(&Generation::pages(gt.clone()), &gt, &cfg, &w).unwrap();
        let mut fewer = gt[0].clone();
        fewer.elements.remove(pick.index(fewer.elements.len()));
        let reduced = aes(&Generation::pages(vec![fewer]), &gt, &cfg, &w).unwrap();
        prop_assert!(reduced.aes <= full.aes);
        prop_assert_eq!(reduced.total(), 100.0);
    }

    #[test]
    fn buckets_and_score_sum_to_one_hundred(
        gt in prop::collection::vec(page("p"), 1..4),
        generated in prop::collection::vec(page("p"), 0..4),
        statuses in prop::collection::vec(prop::sample::select(vec![PageStatus::Ok, PageStatus::RenderError, PageStatus::InteractionError]), 4),
        malformed in prop::collection::vec(any::<bool>(), 4),
        beta in 0.0..2.0f64,
    ) {
        let rename = |pages: Vec<PageSnapshot>| -> Vec<PageSnapshot> {
            pages.into_iter().enumerate().map(|(i, mut p)| {
                p.action_id = if i == 0 { "initial".into() } else { format!("a{i}") };
                p
            }).collect()
        };
        let gt = rename(gt);
        let mut generated = rename(generated);
        for (p, s) in generated.iter_mut().zip(&statuses) {
            if *s != PageStatus::Ok {
                *p = PageSnapshot::failed(p.action_id.clone(), *s);
            }
        }
        let malformed: Vec<String> = gt.iter().zip(&malformed).filter(|(_, m)| **m).map(|(p, _)| p.action_id.clone()).collect();
        let w = ScoreWeights { beta, ..Default::default() };
        let r = aes(&Generation::Pages { pages: generated, malformed }, &gt, &MatchConfig::default(), &w).unwrap();
        prop_assert_eq!(r.total(), 100.0);
        prop_assert!((0.0..=100.0).contains(&r.aes));
    }
}
