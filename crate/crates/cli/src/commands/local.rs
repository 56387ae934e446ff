use std::path::Path;

use brw_core::algebra::{AlgebraSpec, Subalgebra, Subspace};
use brw_core::exact_math::Cyclotomic;
use brw_core::group::LinearChar;
use brw_core::local::{
    factor_unitary, is_admissible_shape, parse_rational, residue_group, smooth_char_group, InductionDatum,
    LocalCharRecord, SmoothCharLocal, ABSOLUTE_VALUE_CONVENTION,
};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::failure::Failure;
use crate::input::LoadedSpec;
use crate::report::{json_artifact, Outcome};

/// Parses a phase `m:e`, meaning `z_m^e`.
pub fn parse_phase(text: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Spec(format!("--phase: expected m:e, found `{text}`"));
    let (m, e) = text.split_once(':').ok_or_else(bad)?;
    let m: u32 = m.trim().parse().map_err(|_| bad())?;
    let e: u32 = e.trim().parse().map_err(|_| bad())?;
    if m == 0 {
        return Err(bad());
    }
    Ok((m, e))
}

/// Parses comma-separated exponents on the unit-group generators.
pub fn parse_exponents(text: &str) -> Result<Vec<u64>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Spec(format!("--unit: bad exponent `{x}`")))
        })
        .collect()
}

/// `z^(prod gens_i^(e_i))` as a character of level `k`, with modulus `r` and the given phase.
pub fn build_character(p: u32, k: u32, unit: &[u64], r: &str, phase: (u32, u32)) -> Result<SmoothCharLocal, Failure> {
    let r = parse_rational(r)?;
    let g = residue_group(p, k)?;
    let mut u = SmoothCharLocal::new(p, k, LinearChar::trivial(&g), r.clone(), (1, 0))?;
    if !unit.is_empty() {
        let cg = smooth_char_group(p, k)?;
        if unit.len() != cg.unit_generators.len() {
            return Err(Failure::Spec(format!(
                "--unit: expected {} exponents (divisors {:?})",
                cg.unit_generators.len(),
                cg.divisors
            )));
        }
        for ((gen, &e), &d) in cg.unit_generators.iter().zip(unit).zip(&cg.divisors) {
            for _ in 0..e % d {
                u = u.mul(gen)?;
            }
        }
    }
    Ok(SmoothCharLocal::new(p, k, u.unit_part().clone(), r, phase)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorResult {
    pub absolute_value_convention: &'static str,
    pub input: LocalCharRecord,
    pub unitary: LocalCharRecord,
    pub twist: LocalCharRecord,
    pub unitary_has_modulus_one: bool,
    pub product_equals_input: bool,
    /// Number of points `u * w^n` at which the product was compared with the input.
    pub points_checked: usize,
}

/// Splits `chi` and checks the product against `chi` as functions and pointwise.
pub fn factor_check(chi: &SmoothCharLocal) -> Result<FactorResult, Failure> {
    let (unitary, twist) = factor_unitary(chi)?;
    let product = unitary.mul(&twist)?;
    let modulus = chi.p().pow(chi.level().max(1)) as u64;
    let mut points = 0;
    let mut pointwise = true;
    for u in (1..modulus).filter(|u| u % chi.p() as u64 != 0) {
        for n in -2..=2 {
            let lhs = chi.evaluate(u, n)?;
            let rhs = unitary.evaluate(u, n)?.mul(&twist.evaluate(u, n)?);
            pointwise &= lhs == rhs;
            points += 1;
        }
    }
    let unit_modulus = unitary.is_unitary() && {
        let v: Cyclotomic = unitary.evaluate(1, 1)?;
        v.mul(&v.conj()) == Cyclotomic::one(v.conductor())
    };
    Ok(FactorResult {
        absolute_value_convention: ABSOLUTE_VALUE_CONVENTION,
        input: chi.record()?,
        unitary: unitary.record()?,
        twist: twist.record()?,
        unitary_has_modulus_one: unit_modulus,
        product_equals_input: product.same_character(chi) && pointwise,
        points_checked: points,
    })
}

pub fn run_factor(cfg: &RunConfig, chi: &SmoothCharLocal) -> Result<Outcome, Failure> {
    cfg.require_json()?;
    let res = factor_check(chi)?;
    let verified = res.unitary_has_modulus_one && res.product_equals_input;
    let mut out = Outcome::default();
    if !verified {
        out.failures.push("factor_unitary does not round-trip".into());
    }
    out.artifacts.push(json_artifact(
        format!("local_factor_p{}_k{}.json", chi.p(), chi.level()),
        cfg,
        None,
        verified,
        res,
    ));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharGroupResult {
    pub absolute_value_convention: &'static str,
    pub p: u32,
    pub level: u32,
    pub divisors: Vec<u64>,
    pub unit_order: u64,
    pub unit_generators: Vec<LocalCharRecord>,
    pub unramified: LocalCharRecord,
}

pub fn run_chargroup(cfg: &RunConfig, p: u32, k: u32) -> Result<Outcome, Failure> {
    cfg.require_json()?;
    let g = smooth_char_group(p, k)?;
    let res = CharGroupResult {
        absolute_value_convention: ABSOLUTE_VALUE_CONVENTION,
        p,
        level: k,
        unit_order: g.unit_order(),
        divisors: g.divisors.clone(),
        unit_generators: g.unit_generators.iter().map(|c| c.record()).collect::<Result<_, _>>()?,
        unramified: g.unramified.record()?,
    };
    Ok(Outcome {
        artifacts: vec![json_artifact(
            format!("local_chargroup_p{p}_k{k}.json"),
            cfg,
            None,
            true,
            res,
        )],
        failures: Vec::new(),
    })
}

#[derive(Debug, Deserialize)]
struct WitnessFile {
    input: WitnessInput,
    result: WitnessBody,
}

#[derive(Debug, Deserialize)]
struct WitnessInput {
    source: String,
    spec: AlgebraSpec,
}

#[derive(Debug, Deserialize)]
struct WitnessBody {
    witnesses: Vec<WitnessEntry>,
}

#[derive(Debug, Deserialize)]
struct WitnessEntry {
    index: usize,
    degree: i64,
    subalgebra_rows: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeRecord {
    pub index: usize,
    pub degree: i64,
    pub subalgebra_dim: Option<usize>,
    /// `None` when the report carries no constructive witness for this irreducible.
    pub admissible_shape: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleResult {
    pub absolute_value_convention: &'static str,
    pub witness_source: String,
    pub shapes: Vec<ShapeRecord>,
    /// Whether admissible shape coincides with degree one on every witness.
    pub shape_iff_degree_one: bool,
}

pub fn admissible_result(path: &Path) -> Result<(LoadedSpec, AdmissibleResult), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))?;
    let file: WitnessFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Spec(format!("{}: not a gutkin report: {e}", path.display())))?;
    let spec = LoadedSpec {
        source: file.input.source.clone(),
        stem: path
            .file_stem()
            .and_then(|s| s.to_str())
            .map_or("witness", |s| s.trim_end_matches(".gutkin"))
            .to_string(),
        spec: file.input.spec,
    };
    let alg = spec.build()?;
    let mut shapes = Vec::new();
    for w in &file.result.witnesses {
        let rec = match &w.subalgebra_rows {
            None => ShapeRecord {
                index: w.index,
                degree: w.degree,
                subalgebra_dim: None,
                admissible_shape: None,
            },
            Some(rows) => {
                if rows
                    .iter()
                    .any(|r| r.len() != alg.dim() || r.iter().any(|&x| x >= alg.p()))
                {
                    return Err(Failure::Spec(format!(
                        "witness {}: rows do not fit the algebra",
                        w.index
                    )));
                }
                let sub = Subalgebra::certify(&alg, Subspace::of(&alg, rows))?;
                let datum = InductionDatum::new(&alg, sub)?;
                ShapeRecord {
                    index: w.index,
                    degree: w.degree,
                    subalgebra_dim: Some(datum.subalgebra.dim()),
                    admissible_shape: Some(is_admissible_shape(&datum)),
                }
            }
        };
        shapes.push(rec);
    }
    let shape_iff_degree_one = shapes.iter().all(|s| s.admissible_shape == Some(s.degree == 1));
    Ok((
        spec,
        AdmissibleResult {
            absolute_value_convention: ABSOLUTE_VALUE_CONVENTION,
            witness_source: file.input.source,
            shapes,
            shape_iff_degree_one,
        },
    ))
}

pub fn run_admissible(cfg: &RunConfig, path: &Path) -> Result<Outcome, Failure> {
    cfg.require_json()?;
    let (spec, res) = admissible_result(path)?;
    let missing = res.shapes.iter().filter(|s| s.admissible_shape.is_none()).count();
    let mut out = Outcome::default();
    if missing > 0 {
        out.failures
            .push(format!("{missing} irreducibles have no constructive witness"));
    }
    out.artifacts.push(json_artifact(
        format!("{}.admissible.json", spec.stem),
        cfg,
        Some(&spec),
        missing == 0,
        res,
    ));
    Ok(out)
}
