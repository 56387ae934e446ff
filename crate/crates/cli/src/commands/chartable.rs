use brw_core::algebra::render_vector;
use brw_core::character::char_table;
use brw_core::group::unit_group;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::failure::Failure;
use crate::input::LoadedSpec;
use crate::report::{csv_artifact, json_artifact, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableResult {
    pub group_order: usize,
    pub class_count: usize,
    /// All values are written in `Q(z)` with `z` a primitive root of this order.
    pub conductor: u32,
    pub auxiliary_prime: u32,
    pub class_representatives: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<u64>,
    pub degrees: Vec<i64>,
    /// One row per irreducible, one entry per class.
    pub values: Vec<Vec<String>>,
    pub verification: Option<String>,
}

pub fn run(cfg: &RunConfig, spec: &LoadedSpec) -> Result<Outcome, Failure> {
    let alg = spec.build()?;
    let g = unit_group(&alg, cfg.cap_order)?;
    let t = char_table(&g)?;
    let verification = t.verify().err().map(|e| e.to_string());
    let classes = t.classes();
    let (header, rows) = t.csv_records();
    let res = TableResult {
        group_order: g.order(),
        class_count: t.len(),
        conductor: t.conductor(),
        auxiliary_prime: t.auxiliary_prime(),
        class_representatives: classes
            .reps
            .iter()
            .map(|&r| render_vector(&alg, g.element(r)))
            .collect(),
        class_sizes: classes.sizes.clone(),
        class_orders: classes.rep_orders.clone(),
        degrees: t.degrees(),
        values: rows.iter().map(|r| r[2..].to_vec()).collect(),
        verification,
    };
    let verified = res.verification.is_none();
    let mut out = Outcome::default();
    if let Some(v) = &res.verification {
        out.failures.push(format!("{}: {v}", spec.source));
    }
    let name = format!("{}.chartable.{}", spec.stem, cfg.format.extension());
    out.artifacts.push(match cfg.format {
        Format::Json => json_artifact(name, cfg, Some(spec), verified, res),
        Format::Csv => {
            let comments = vec![
                format!("group_order {}", res.group_order),
                format!("class_sizes {}", join(&res.class_sizes)),
                format!("class_representatives {}", res.class_representatives.join(" | ")),
                format!("verified {verified}"),
            ];
            csv_artifact(name, cfg, Some(spec), &comments, &header, &rows)
        }
    });
    Ok(out)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}
