use brw_core::corpus::{corpus, CorpusEntry};
use serde::Serialize;

use super::gutkin;
use super::info::info_result;
use crate::config::{Mode, RunConfig};
use crate::failure::Failure;
use crate::input::{LoadedSpec, CORPUS_PREFIX};
use crate::report::{json_artifact, Artifact, Outcome};

fn loaded(e: &CorpusEntry) -> LoadedSpec {
    LoadedSpec {
        source: format!("{CORPUS_PREFIX}{}", e.id),
        stem: e.id.to_string(),
        spec: e.spec.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusListing {
    pub id: &'static str,
    pub name: String,
    pub p: u32,
    pub dim: usize,
    pub group_order: Option<u128>,
    pub gated: bool,
}

pub fn listing() -> Result<Vec<CorpusListing>, Failure> {
    corpus()
        .iter()
        .map(|e| {
            let info = info_result(&loaded(e))?;
            Ok(CorpusListing {
                id: e.id,
                name: info.name,
                p: info.p,
                dim: info.dim,
                group_order: info.group_order,
                gated: e.gated,
            })
        })
        .collect()
}

pub fn run_list(cfg: &RunConfig) -> Result<Outcome, Failure> {
    cfg.require_json()?;
    Ok(Outcome {
        artifacts: vec![json_artifact("corpus.json".into(), cfg, None, true, listing()?)],
        failures: Vec::new(),
    })
}

/// Writes the shipped specs as plain JSON spec files.
pub fn run_export(cfg: &RunConfig) -> Result<Outcome, Failure> {
    if cfg.out.is_none() {
        return Err(Failure::Spec("`corpus export` needs --out".into()));
    }
    let artifacts = corpus()
        .iter()
        .map(|e| Artifact {
            name: format!("{}.json", e.id),
            content: format!("{}\n", e.spec.to_json()),
        })
        .collect();
    Ok(Outcome {
        artifacts,
        failures: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusRunEntry {
    pub id: &'static str,
    pub gated: bool,
    /// Set when the entry was not run; gated entries run only when the order cap admits them.
    pub skipped: Option<String>,
    pub group_order: Option<usize>,
    pub class_count: Option<usize>,
    pub degrees: Option<Vec<i64>>,
    pub sum_of_squares: Option<i64>,
    pub all_witnessed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusRunSummary {
    pub mode: Mode,
    pub entries: Vec<CorpusRunEntry>,
    pub all_witnessed: bool,
}

/// Gutkin verification over the corpus. One report per entry plus a summary.
pub fn run_corpus(cfg: &RunConfig, mode: Mode) -> Result<Outcome, Failure> {
    cfg.require_json()?;
    let mut out = Outcome::default();
    let mut entries = Vec::new();
    for e in corpus() {
        let spec = loaded(&e);
        let order = info_result(&spec)?.group_order.unwrap_or(u128::MAX);
        let mut rec = CorpusRunEntry {
            id: e.id,
            gated: e.gated,
            skipped: None,
            group_order: None,
            class_count: None,
            degrees: None,
            sum_of_squares: None,
            all_witnessed: None,
        };
        if e.gated && order > cfg.cap_order as u128 {
            rec.skipped = Some(format!("gated: |G| = {order} exceeds --cap-order {}", cfg.cap_order));
            entries.push(rec);
            continue;
        }
        let r = gutkin::report(cfg, &spec, mode)?;
        out.failures.extend(gutkin::failures(&spec, &r));
        rec.group_order = Some(r.group_order);
        rec.class_count = Some(r.class_count);
        rec.degrees = Some(r.degrees.clone());
        rec.sum_of_squares = Some(r.sum_of_squares);
        rec.all_witnessed = Some(r.all_witnessed);
        out.artifacts.push(json_artifact(
            format!("{}.gutkin.json", e.id),
            cfg,
            Some(&spec),
            r.all_witnessed,
            &r,
        ));
        entries.push(rec);
    }
    let summary = CorpusRunSummary {
        mode,
        all_witnessed: entries.iter().all(|e| e.all_witnessed != Some(false)),
        entries,
    };
    let verified = out.verified();
    let summary = json_artifact("corpus_summary.json".into(), cfg, None, verified, summary);
    if cfg.out.is_some() {
        out.artifacts.push(summary);
    } else {
        // stdout gets the summary only
        out.artifacts = vec![summary];
    }
    Ok(out)
}
