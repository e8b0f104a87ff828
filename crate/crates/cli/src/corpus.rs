use std::fs;
use std::path::Path;
use std::sync::Arc;

use arena_core::football::{full_sweep, Scenario};
use arena_core::par::Exec;
use arena_core::sokoban::{corpus_plan, generate_level, Level};
use arena_core::webui::WebTask;
use serde::{Deserialize, Serialize};

use crate::cli::EnvKind;
use crate::error::{config, corpus, Result};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tier: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_best: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub env: String,
    pub seed: u64,
    pub count: usize,
    pub entries: Vec<ManifestEntry>,
}

pub fn sokoban_id(tier: u8, index: usize) -> String {
    format!("sokoban-t{tier}-{index:03}")
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| config(format!("cannot write {}: {e}", path.display())))
}

/// Writes the standard corpus for `env` into `out`. Identical seeds give
/// identical files.
pub fn generate(env: EnvKind, seed: u64, out: &Path, exec: Exec) -> Result<Manifest> {
    fs::create_dir_all(out).map_err(|e| config(format!("cannot create {}: {e}", out.display())))?;
    let mut entries = Vec::new();
    match env {
        EnvKind::Sokoban => {
            let plan = corpus_plan(seed);
            let levels = exec.map(&plan, |e| generate_level(e.tier, e.seed));
            for (slot, level) in plan.iter().zip(levels) {
                let level = level.map_err(corpus)?;
                let id = sokoban_id(slot.tier, slot.index);
                let file = format!("{id}.txt");
                write(&out.join(&file), &level.to_file_text())?;
                entries.push(ManifestEntry {
                    id,
                    file,
                    tier: Some(level.tier),
                    optimal_steps: Some(level.optimal_steps),
                    r_best: Some(level.r_best),
                    category: None,
                    region: None,
                });
            }
        }
        EnvKind::Football => {
            // The football sweep has fixed seeds; `seed` is recorded only.
            for sc in full_sweep().map_err(corpus)? {
                let file = format!("{}.json", sc.id);
                write(&out.join(&file), &sc.to_json())?;
                entries.push(ManifestEntry {
                    id: sc.id.clone(),
                    file,
                    tier: None,
                    optimal_steps: None,
                    r_best: None,
                    category: Some(sc.category.slug().to_string()),
                    region: Some(sc.region.number()),
                });
            }
        }
        EnvKind::Webui => return Err(config("webui corpora are curated pages and cannot be generated")),
    }
    let manifest = Manifest { env: env.name().into(), seed, count: entries.len(), entries };
    write(&out.join(MANIFEST), &serde_json::to_string_pretty(&manifest).expect("manifest serialises"))?;
    Ok(manifest)
}

fn files_with_ext(dir: &Path, ext: &str) -> Result<Vec<std::path::PathBuf>> {
    let read = fs::read_dir(dir).map_err(|e| corpus(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<_> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == ext) && p.file_name().is_some_and(|n| n != MANIFEST))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(corpus(format!("{}: no .{ext} files", dir.display())));
    }
    Ok(files)
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

pub fn load_sokoban(dir: &Path) -> Result<Vec<(String, Arc<Level>)>> {
    files_with_ext(dir, "txt")?
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(|e| corpus(format!("{}: {e}", p.display())))?;
            let level = Level::parse(&text).map_err(|e| corpus(format!("{}: {e}", p.display())))?;
            Ok((stem(&p), Arc::new(level)))
        })
        .collect()
}

pub fn load_football(dir: &Path) -> Result<Vec<Scenario>> {
    files_with_ext(dir, "json")?
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(|e| corpus(format!("{}: {e}", p.display())))?;
            Scenario::from_json(&text).map_err(|e| corpus(format!("{}: {e}", p.display())))
        })
        .collect()
}

pub fn load_webui(dir: &Path) -> Result<Vec<WebTask>> {
    let tasks = WebTask::load_corpus(dir).map_err(corpus)?;
    if tasks.is_empty() {
        return Err(corpus(format!("{}: no tasks", dir.display())));
    }
    Ok(tasks)
}
