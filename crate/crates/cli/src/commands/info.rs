use brw_core::algebra::{
    basic_decomposition, is_split_basic, radical, radical_power, render_vector, SplitBasicCertificate,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::failure::Failure;
use crate::input::LoadedSpec;
use crate::report::{json_artifact, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfoResult {
    pub name: String,
    pub p: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    pub certificate: SplitBasicCertificate,
    /// `dim J^n` for `n = 1, 2, ...` up to and including the first zero.
    pub radical_dims: Vec<usize>,
    pub nilpotency_index: Option<usize>,
    pub idempotents: Vec<String>,
    pub group_order: Option<u128>,
    pub torus_order: Option<u128>,
    pub p_group_order: Option<u128>,
}

pub fn info_result(spec: &LoadedSpec) -> Result<InfoResult, Failure> {
    let alg = spec.build()?;
    let certificate = is_split_basic(&alg);
    let mut res = InfoResult {
        name: spec.spec.display_name(),
        p: alg.p(),
        dim: alg.dim(),
        labels: alg.labels().to_vec(),
        certificate,
        radical_dims: Vec::new(),
        nilpotency_index: None,
        idempotents: Vec::new(),
        group_order: None,
        torus_order: None,
        p_group_order: None,
    };
    if let Ok(j) = radical(&alg) {
        let mut n = 1;
        loop {
            let d = radical_power(&alg, &j, n)?.dim();
            res.radical_dims.push(d);
            if d == 0 {
                break;
            }
            n += 1;
        }
        res.nilpotency_index = Some(res.radical_dims.len() - 1);
    }
    if let Ok(dec) = basic_decomposition(&alg) {
        let p = alg.p() as u128;
        res.idempotents = dec.idempotents.iter().map(|e| render_vector(&alg, e)).collect();
        res.torus_order = (p - 1).checked_pow(dec.rank() as u32);
        res.p_group_order = p.checked_pow(dec.radical.dim() as u32);
        res.group_order = res
            .torus_order
            .zip(res.p_group_order)
            .and_then(|(t, u)| t.checked_mul(u));
    }
    Ok(res)
}

pub fn run(cfg: &RunConfig, spec: &LoadedSpec) -> Result<Outcome, Failure> {
    cfg.require_json()?;
    let res = info_result(spec)?;
    let verified = res.certificate.split_basic;
    let mut out = Outcome::default();
    if !verified {
        out.failures.push(format!(
            "{}: not split basic: {}",
            spec.source,
            res.certificate.reason.clone().unwrap_or_default()
        ));
    }
    out.artifacts.push(json_artifact(
        format!("{}.info.json", spec.stem),
        cfg,
        Some(spec),
        verified,
        res,
    ));
    Ok(out)
}
