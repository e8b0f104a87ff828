use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::AggregateReport;

pub const DELTA_NOTE: &str = "delta = 2 x standard error over per-repeat grand means";

/// Several aggregated runs, as written by `arena report`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub delta_note: String,
    pub runs: Vec<AggregateReport>,
}

impl Report {
    pub fn new(runs: Vec<AggregateReport>) -> Self {
        Report { delta_note: DELTA_NOTE.to_string(), runs }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialise")
    }

    pub fn to_markdown(&self) -> String {
        markdown_report(&self.runs)
    }
}

/// Score table with IFE/IA/RA rates, then AES buckets and best-of-N
/// curves where available.
pub fn markdown_report(runs: &[AggregateReport]) -> String {
    let mut out = String::new();
    out.push_str("## Scores\n\n");
    out.push_str("| run | env | mode | score | delta | repeats | levels | IFE % | IA % | RA % | complete |\n");
    out.push_str("|---|---|---|---:|---:|---:|---:|---:|---:|---:|---|\n");
    for r in runs {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:.2} | {:.2} | {} | {} | {:.1} | {:.1} | {:.1} | {} |",
            r.label,
            r.env,
            r.mode,
            r.mean,
            r.delta,
            r.repeats,
            r.levels.len(),
            r.errors.ife_pct(),
            r.errors.invalid_pct(),
            r.errors.repeating_pct(),
            if r.is_complete() { "yes".to_string() } else { format!("no ({} levels short)", r.incomplete.len()) },
        );
    }
    let _ = writeln!(out, "\n{DELTA_NOTE}.");

    let web: Vec<_> = runs.iter().filter_map(|r| r.aes_buckets.map(|b| (r, b))).collect();
    if !web.is_empty() {
        out.push_str("\n## AES error attribution (percentage points)\n\n");
        out.push_str("| run | env | mode | AES | Par. | Ren. | Act. | Mat. | Attr. |\n|---|---|---|---:|---:|---:|---:|---:|---:|\n");
        for (r, b) in web {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} |",
                r.label, r.env, r.mode, r.mean, b.parse, b.render, b.interaction, b.matching, b.attribute
            );
        }
    }

    let curves: Vec<_> = runs.iter().filter(|r| r.best_of_n.len() > 1).collect();
    if !curves.is_empty() {
        out.push_str("\n## Best-of-N\n\n| run | env | mode | N | score |\n|---|---|---|---:|---:|\n");
        for r in curves {
            for (n, v) in &r.best_of_n {
                let _ = writeln!(out, "| {} | {} | {} | {} | {:.2} |", r.label, r.env, r.mode, n, v);
            }
        }
    }
    out
}
