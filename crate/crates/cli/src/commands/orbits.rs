use brw_core::algebra::{render_vector, Algebra, Subspace};
use brw_core::group::{char_orbits, LinearChar};
use brw_core::gutkin::{certify_stabilizer_subalgebra, Frame};
use brw_core::Error;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::failure::Failure;
use crate::input::LoadedSpec;
use crate::report::{csv_artifact, json_artifact, Outcome};

/// The ideal whose `1 + I` is acted on: a radical power or an explicit basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealChoice {
    Power(usize),
    Basis(Vec<String>),
}

/// Accepts `J`, `J^n`, `power:n`, a bare `n`, or `basis:v1;v2;...` where each
/// vector is either comma-separated coordinates or a sum of labelled basis
/// elements such as `e12 + 2*e13`.
pub fn parse_ideal(text: &str) -> Result<IdealChoice, Failure> {
    let t = text.trim();
    let power = |s: &str| -> Result<IdealChoice, Failure> {
        match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(IdealChoice::Power(n)),
            _ => Err(Failure::Spec(format!("--ideal: bad radical power `{s}`"))),
        }
    };
    if t == "J" {
        return Ok(IdealChoice::Power(1));
    }
    if let Some(n) = t.strip_prefix("J^").or_else(|| t.strip_prefix("power:")) {
        return power(n);
    }
    if let Some(rest) = t.strip_prefix("basis:") {
        let vs: Vec<String> = rest
            .split(';')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        if vs.is_empty() {
            return Err(Failure::Spec("--ideal: empty basis".into()));
        }
        return Ok(IdealChoice::Basis(vs));
    }
    if t.chars().all(|c| c.is_ascii_digit()) && !t.is_empty() {
        return power(t);
    }
    Err(Failure::Spec(format!(
        "--ideal: expected J, J^n, power:n or basis:..., found `{t}`"
    )))
}

fn parse_vector(alg: &Algebra, text: &str) -> Result<Vec<u32>, Failure> {
    let p = alg.p();
    let bad = |m: String| Failure::Spec(format!("--ideal: `{text}`: {m}"));
    if text.contains(',') {
        let coords = text
            .split(',')
            .map(|c| c.trim().parse::<i64>().map(|x| x.rem_euclid(p as i64) as u32))
            .collect::<Result<Vec<u32>, _>>()
            .map_err(|e| bad(e.to_string()))?;
        if coords.len() != alg.dim() {
            return Err(bad(format!("expected {} coordinates", alg.dim())));
        }
        return Ok(coords);
    }
    let mut v = alg.zero();
    for term in text.split('+') {
        let term = term.trim();
        let (c, label) = match term.split_once('*') {
            Some((c, l)) => (
                c.trim()
                    .parse::<i64>()
                    .map_err(|e| bad(e.to_string()))?
                    .rem_euclid(p as i64) as u32,
                l.trim(),
            ),
            None => (1, term),
        };
        let i = alg
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| bad(format!("unknown basis label `{label}`")))?;
        v[i] = (v[i] + c) % p;
    }
    Ok(v)
}

pub fn resolve_ideal(frame: &Frame, choice: &IdealChoice) -> Result<Subspace, Failure> {
    match choice {
        IdealChoice::Power(n) => Ok(frame.radical_power(*n).clone()),
        IdealChoice::Basis(vs) => {
            let alg = frame.ambient();
            let rows = vs.iter().map(|v| parse_vector(alg, v)).collect::<Result<Vec<_>, _>>()?;
            Ok(Subspace::of(alg, &rows))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharRecord {
    pub conductor: u32,
    /// `(generator, exponent)`: the value at the generator is `z^exponent`.
    pub generators: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerCertificate {
    pub certified: bool,
    pub subalgebra_dim: Option<usize>,
    pub subalgebra_basis: Option<Vec<String>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub size: usize,
    pub trivial: bool,
    pub representative: CharRecord,
    pub stabilizer_order: usize,
    pub certificate: StabilizerCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitsResult {
    pub ideal_dim: usize,
    pub ideal_basis: Vec<String>,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub character_count: usize,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitRecord>,
}

fn char_record(frame: &Frame, q: &brw_core::group::FiniteGroup, theta: &LinearChar) -> CharRecord {
    let alg = frame.ambient();
    CharRecord {
        conductor: theta.conductor(),
        generators: q
            .generators()
            .iter()
            .map(|&x| (render_vector(alg, q.element(x)), theta.exp(x)))
            .collect(),
    }
}

pub fn orbits_result(cfg: &RunConfig, spec: &LoadedSpec, choice: &IdealChoice) -> Result<OrbitsResult, Failure> {
    let alg = spec.build()?;
    let frame = Frame::new(&alg, cfg.cap_order)?;
    let ideal = resolve_ideal(&frame, choice)?;
    let q = frame.one_plus(&ideal).map_err(|e| match e {
        Error::NotSubgroup => Failure::Spec("--ideal: 1 + I is not a subgroup (I is not closed under products)".into()),
        e => e.into(),
    })?;
    let orbits = char_orbits(frame.group(), &q)?;
    let records: Vec<OrbitRecord> = orbits
        .iter()
        .map(|o| {
            let certificate = match certify_stabilizer_subalgebra(&frame, &o.stabilizer) {
                Ok(sub) => StabilizerCertificate {
                    certified: true,
                    subalgebra_dim: Some(sub.dim()),
                    subalgebra_basis: Some(sub.space().basis().iter().map(|r| render_vector(&alg, r)).collect()),
                    error: None,
                },
                Err(e) => StabilizerCertificate {
                    certified: false,
                    subalgebra_dim: None,
                    subalgebra_basis: None,
                    error: Some(e.to_string()),
                },
            };
            OrbitRecord {
                size: o.len(),
                trivial: o.base.is_trivial(),
                representative: char_record(&frame, &q, &o.base),
                stabilizer_order: o.stabilizer.order(),
                certificate,
            }
        })
        .collect();
    let character_count = records.iter().map(|r| r.size).sum();
    Ok(OrbitsResult {
        ideal_dim: ideal.dim(),
        ideal_basis: ideal.basis().iter().map(|r| render_vector(&alg, r)).collect(),
        group_order: frame.group().order(),
        subgroup_order: q.order(),
        character_count,
        orbit_count: records.len(),
        orbits: records,
    })
}

pub fn run(cfg: &RunConfig, spec: &LoadedSpec, choice: &IdealChoice) -> Result<Outcome, Failure> {
    let res = orbits_result(cfg, spec, choice)?;
    let mut failures = Vec::new();
    for (i, o) in res.orbits.iter().enumerate() {
        if o.size * o.stabilizer_order != res.group_order {
            failures.push(format!(
                "{}: orbit {i}: size times stabilizer order is not |G|",
                spec.source
            ));
        }
    }
    let verified = failures.is_empty();
    let name = format!("{}.orbits.{}", spec.stem, cfg.format.extension());
    let artifact = match cfg.format {
        Format::Json => json_artifact(name, cfg, Some(spec), verified, &res),
        Format::Csv => {
            let header: Vec<String> = [
                "orbit",
                "size",
                "trivial",
                "stabilizer_order",
                "certified",
                "subalgebra_dim",
                "subalgebra_basis",
            ]
            .map(String::from)
            .to_vec();
            let rows: Vec<Vec<String>> = res
                .orbits
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    vec![
                        i.to_string(),
                        o.size.to_string(),
                        o.trivial.to_string(),
                        o.stabilizer_order.to_string(),
                        o.certificate.certified.to_string(),
                        o.certificate.subalgebra_dim.map(|d| d.to_string()).unwrap_or_default(),
                        o.certificate
                            .subalgebra_basis
                            .as_ref()
                            .map(|b| b.join(" ; "))
                            .unwrap_or_default(),
                    ]
                })
                .collect();
            let comments = vec![
                format!("ideal {}", res.ideal_basis.join(" ; ")),
                format!(
                    "group_order {} subgroup_order {} characters {}",
                    res.group_order, res.subgroup_order, res.character_count
                ),
            ];
            csv_artifact(name, cfg, Some(spec), &comments, &header, &rows)
        }
    };
    Ok(Outcome {
        artifacts: vec![artifact],
        failures,
    })
}
