use serde::Serialize;

use super::{gutkin_decompose, verify_gutkin_brute, BruteReport, ChainStep, Frame, GutkinWitness};
use crate::algebra::{render_vector, SubalgebraBounds};
use crate::character::char_table;
use crate::error::{Error, Result};

pub const REPORT_SCHEMA: &str = "brw.gutkin/1";

/// A linear character given by its values on generators and on every element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaRecord {
    pub conductor: u32,
    /// `(element, exponent)` on the generators of `H`.
    pub generators: Vec<(String, u32)>,
    /// Exponents on all elements of `H`, in element order.
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessChecks {
    pub induced_equals_target: bool,
    pub degree_equals_index: bool,
    /// Present when the exhaustive search ran.
    pub brute_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub index: usize,
    pub degree: i64,
    pub subalgebra_dim: Option<usize>,
    /// Echelon basis of `B` in ambient coordinates.
    pub subalgebra_rows: Option<Vec<Vec<u32>>>,
    pub subalgebra_basis: Option<Vec<String>>,
    pub h_order: Option<usize>,
    pub lambda: Option<LambdaRecord>,
    pub chain: Option<Vec<ChainStep>>,
    pub contains_diagonal: Option<bool>,
    pub checks: Option<WitnessChecks>,
    pub brute_witnesses: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteSummary {
    pub subalgebras: usize,
    pub candidates: usize,
    pub witness_counts: Vec<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GutkinReport {
    pub schema: &'static str,
    pub p: u32,
    pub dim: usize,
    pub group_order: usize,
    pub class_count: usize,
    pub degrees: Vec<i64>,
    pub sum_of_squares: i64,
    pub constructive: bool,
    pub brute: Option<BruteSummary>,
    pub witnesses: Vec<WitnessRecord>,
    pub all_witnessed: bool,
}

impl GutkinReport {
    /// Runs the constructive descent for every irreducible and, when bounds
    /// are given, the exhaustive search. Cap violations are returned as
    /// errors; every other failure is recorded in the report.
    pub fn build(frame: &Frame, constructive: bool, brute: Option<&SubalgebraBounds>) -> Result<Self> {
        let g = frame.group();
        let table = char_table(g)?;
        let degrees = table.degrees();
        let brute_run: Option<std::result::Result<BruteReport, Error>> = match brute {
            None => None,
            Some(bounds) => match verify_gutkin_brute(frame, bounds) {
                Err(e @ Error::TooLarge { .. }) => return Err(e),
                r => Some(r),
            },
        };
        let mut witnesses = Vec::with_capacity(table.len());
        for (i, chi) in table.irreducibles().iter().enumerate() {
            let degree = degrees[i];
            let brute_witnesses = match &brute_run {
                Some(Ok(b)) => Some(b.witness_counts[i]),
                _ => None,
            };
            let mut rec = WitnessRecord {
                index: i,
                degree,
                subalgebra_dim: None,
                subalgebra_rows: None,
                subalgebra_basis: None,
                h_order: None,
                lambda: None,
                chain: None,
                contains_diagonal: None,
                checks: None,
                brute_witnesses,
                error: None,
            };
            if constructive {
                match gutkin_decompose(frame, chi) {
                    Ok(w) => fill(&mut rec, frame, &w, brute_run.as_ref().and_then(|b| b.as_ref().ok()))?,
                    Err(e @ Error::TooLarge { .. }) => return Err(e),
                    Err(e) => rec.error = Some(e.to_string()),
                }
            }
            witnesses.push(rec);
        }
        let brute = brute_run.map(|r| match r {
            Ok(b) => BruteSummary {
                subalgebras: b.subalgebras.len(),
                candidates: b.candidates,
                witness_counts: b.witness_counts,
                error: None,
            },
            Err(e) => BruteSummary {
                subalgebras: 0,
                candidates: 0,
                witness_counts: Vec::new(),
                error: Some(e.to_string()),
            },
        });
        let constructive_ok = !constructive
            || witnesses.iter().all(|w| {
                w.checks
                    .as_ref()
                    .is_some_and(|c| c.induced_equals_target && c.degree_equals_index && c.brute_agrees != Some(false))
            });
        let brute_ok = brute
            .as_ref()
            .is_none_or(|b| b.error.is_none() && b.witness_counts.iter().all(|&c| c > 0));
        Ok(Self {
            schema: REPORT_SCHEMA,
            p: frame.ambient().p(),
            dim: frame.dim(),
            group_order: g.order(),
            class_count: table.len(),
            sum_of_squares: degrees.iter().map(|d| d * d).sum(),
            degrees,
            constructive,
            brute,
            witnesses,
            all_witnessed: constructive_ok && brute_ok,
        })
    }
}

fn fill(rec: &mut WitnessRecord, frame: &Frame, w: &GutkinWitness, brute: Option<&BruteReport>) -> Result<()> {
    let g = frame.group();
    let alg = frame.ambient();
    let rows = w.subalgebra.space().basis().to_vec();
    rec.subalgebra_dim = Some(w.subalgebra.dim());
    rec.subalgebra_basis = Some(rows.iter().map(|r| render_vector(alg, r)).collect());
    rec.subalgebra_rows = Some(rows);
    rec.h_order = Some(w.h.order());
    rec.lambda = Some(LambdaRecord {
        conductor: w.lambda.conductor(),
        generators: w
            .h
            .generators()
            .iter()
            .map(|&x| (render_vector(alg, w.h.element(x)), w.lambda.exp(x)))
            .collect(),
        exps: w.lambda.exps().to_vec(),
    });
    rec.chain = Some(w.chain.clone());
    rec.contains_diagonal = Some(frame.diagonal().is_subspace_of(w.subalgebra.space()));
    let induced = w.induced(g)?;
    rec.checks = Some(WitnessChecks {
        induced_equals_target: induced == w.target,
        degree_equals_index: (g.order() / w.h.order()) as i64 == rec.degree,
        brute_agrees: brute.map(|b| b.witnesses(rec.index, w.subalgebra.space())),
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::group::DEFAULT_MAX_ORDER;
    use std::sync::Arc;

    #[test]
    fn b2_f3_report() {
        let a = Arc::new(AlgebraSpec::borel(2, 3).build().unwrap());
        let f = Frame::new(&a, DEFAULT_MAX_ORDER).unwrap();
        let r = GutkinReport::build(&f, true, Some(&SubalgebraBounds::default())).unwrap();
        assert!(r.all_witnessed);
        assert_eq!(r.degrees, vec![1, 1, 1, 1, 2, 2]);
        assert_eq!(r.sum_of_squares, 12);
        for w in &r.witnesses {
            let c = w.checks.as_ref().unwrap();
            assert!(c.induced_equals_target && c.degree_equals_index);
            assert_eq!(c.brute_agrees, Some(true));
            assert_eq!(w.contains_diagonal, Some(w.degree == 1));
        }
        let again = GutkinReport::build(&f, true, Some(&SubalgebraBounds::default())).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
    }
}
