use brw_core::gutkin::{Frame, GutkinReport};

use crate::config::{Format, Mode, RunConfig};
use crate::failure::Failure;
use crate::input::LoadedSpec;
use crate::report::{csv_artifact, json_artifact, Outcome};

pub fn report(cfg: &RunConfig, spec: &LoadedSpec, mode: Mode) -> Result<GutkinReport, Failure> {
    let alg = spec.build()?;
    let frame = Frame::new(&alg, cfg.cap_order)?;
    let bounds = cfg.bounds();
    Ok(GutkinReport::build(
        &frame,
        mode.constructive(),
        mode.brute().then_some(&bounds),
    )?)
}

pub fn failures(spec: &LoadedSpec, r: &GutkinReport) -> Vec<String> {
    if r.all_witnessed {
        return Vec::new();
    }
    let mut out: Vec<String> = r
        .witnesses
        .iter()
        .filter_map(|w| {
            let reason = match (&w.error, &w.checks, w.brute_witnesses) {
                (Some(e), _, _) => e.clone(),
                (_, _, Some(0)) => "no exhaustive witness".into(),
                (_, Some(c), _) if c.brute_agrees == Some(false) => {
                    "constructive witness missing from the search".into()
                }
                (_, Some(c), _) if !(c.induced_equals_target && c.degree_equals_index) => {
                    "induced character differs".into()
                }
                _ => return None,
            };
            Some(format!("{}: irreducible {}: {reason}", spec.source, w.index))
        })
        .collect();
    if let Some(e) = r.brute.as_ref().and_then(|b| b.error.as_ref()) {
        out.push(format!("{}: exhaustive search: {e}", spec.source));
    }
    if out.is_empty() {
        out.push(format!("{}: not every irreducible is witnessed", spec.source));
    }
    out
}

pub fn run(cfg: &RunConfig, spec: &LoadedSpec, mode: Mode) -> Result<Outcome, Failure> {
    let r = report(cfg, spec, mode)?;
    let failures = failures(spec, &r);
    let name = format!("{}.gutkin.{}", spec.stem, cfg.format.extension());
    let artifact = match cfg.format {
        Format::Json => json_artifact(name, cfg, Some(spec), r.all_witnessed, &r),
        Format::Csv => {
            let header: Vec<String> = [
                "index",
                "degree",
                "subalgebra_dim",
                "h_order",
                "contains_diagonal",
                "induced_equals_target",
                "brute_witnesses",
                "brute_agrees",
                "subalgebra_basis",
                "error",
            ]
            .map(String::from)
            .to_vec();
            let opt = |x: Option<String>| x.unwrap_or_default();
            let rows: Vec<Vec<String>> = r
                .witnesses
                .iter()
                .map(|w| {
                    vec![
                        w.index.to_string(),
                        w.degree.to_string(),
                        opt(w.subalgebra_dim.map(|d| d.to_string())),
                        opt(w.h_order.map(|d| d.to_string())),
                        opt(w.contains_diagonal.map(|d| d.to_string())),
                        opt(w.checks.as_ref().map(|c| c.induced_equals_target.to_string())),
                        opt(w.brute_witnesses.map(|d| d.to_string())),
                        opt(w.checks.as_ref().and_then(|c| c.brute_agrees).map(|d| d.to_string())),
                        opt(w.subalgebra_basis.as_ref().map(|b| b.join(" ; "))),
                        opt(w.error.clone()),
                    ]
                })
                .collect();
            let comments = vec![
                format!("schema {}", r.schema),
                format!("group_order {} sum_of_squares {}", r.group_order, r.sum_of_squares),
                format!("all_witnessed {}", r.all_witnessed),
            ];
            csv_artifact(name, cfg, Some(spec), &comments, &header, &rows)
        }
    };
    Ok(Outcome {
        artifacts: vec![artifact],
        failures,
    })
}
