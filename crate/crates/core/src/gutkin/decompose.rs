use serde::Serialize;

use super::certify::{certify_stabilizer_subalgebra, diag_centraliser};
use super::sigma::{extends, SigmaData};
use super::Frame;
use crate::algebra::{Subalgebra, Subspace};
use crate::character::{
    char_table, clifford_correspondent, induce_linear, linear_pairing, multiplicity, restrict, Character,
};
use crate::error::{Error, Result};
use crate::group::{linear_characters, FiniteGroup, LinearChar};

/// How one step of the descent was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Branch {
    /// A linear constituent on `P`; descend to `D_theta + J`.
    Linear,
    /// A nonlinear constituent on `P`, scalar on `1 + J^level`; descend to
    /// the stabilizer of an extension to `1 + L` with `L` the given layer.
    Scalar { level: usize, layer: usize },
}

/// One subalgebra on the way from `A` down to `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub dim: usize,
    pub group_order: usize,
    /// How the next step was reached; `None` on the last step.
    pub branch: Option<Branch>,
}

/// A subalgebra `B` and a linear character `lambda` of `H = B^x` with
/// `Ind_H^G lambda` equal to the target irreducible.
#[derive(Debug)]
pub struct GutkinWitness {
    pub target: Character,
    pub chain: Vec<ChainStep>,
    pub subalgebra: Subalgebra,
    pub h: FiniteGroup,
    pub lambda: LinearChar,
}

impl GutkinWitness {
    pub fn induced(&self, g: &FiniteGroup) -> Result<Character> {
        induce_linear(g, &self.h, &self.lambda)
    }

    /// Exact equality of the induced character with the target.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        if self.induced(g)? != self.target {
            return Err(Error::VerificationFailure(
                "induced character differs from the target".into(),
            ));
        }
        Ok(())
    }
}

enum Step {
    Done(LinearChar),
    Descend {
        sub: Subalgebra,
        group: FiniteGroup,
        eta: Character,
        branch: Branch,
    },
}

/// The linear character of `g` whose values are those of a degree-one `chi`.
pub fn as_linear(g: &FiniteGroup, chi: &Character) -> Result<LinearChar> {
    chi.check_group(g)?;
    for lambda in linear_characters(g)? {
        if Character::from_linear(g, &lambda)? == *chi {
            return Ok(lambda);
        }
    }
    Err(Error::PreconditionFailure("character is not linear".into()))
}

/// Constructive descent: repeatedly pass to the stabilizer of a character of
/// an ideal subgroup and to the Clifford correspondent there, until the
/// character is linear.
pub fn gutkin_decompose(top: &Frame, chi: &Character) -> Result<GutkinWitness> {
    chi.check_group(top.group())?;
    if multiplicity(chi, chi)? != 1 {
        return Err(Error::PreconditionFailure("character is not irreducible".into()));
    }
    let mut owned: Option<Frame> = None;
    let mut current = chi.clone();
    let mut chain = Vec::new();
    loop {
        let frame = owned.as_ref().unwrap_or(top);
        match step(frame, &current)? {
            Step::Done(lambda) => {
                chain.push(ChainStep {
                    dim: frame.dim(),
                    group_order: frame.group().order(),
                    branch: None,
                });
                let subalgebra = frame.subalgebra().clone();
                let h = frame.group().subgroup_from_ids(
                    &(0..frame.group().order()).collect::<Vec<_>>(),
                    frame.group().kind().clone(),
                )?;
                let lambda = LinearChar::new(&h, lambda.conductor(), lambda.exps().to_vec())?;
                let w = GutkinWitness {
                    target: chi.clone(),
                    chain,
                    subalgebra,
                    h,
                    lambda,
                };
                w.verify(top.group())?;
                return Ok(w);
            }
            Step::Descend {
                sub,
                group,
                eta,
                branch,
            } => {
                chain.push(ChainStep {
                    dim: frame.dim(),
                    group_order: frame.group().order(),
                    branch: Some(branch),
                });
                if sub.dim() >= frame.dim() {
                    return Err(Error::DecompositionFailure(
                        "descent did not reduce the dimension".into(),
                    ));
                }
                let next = frame.restricted(sub, group)?;
                owned = Some(next);
                current = eta;
            }
        }
    }
}

fn step(frame: &Frame, chi: &Character) -> Result<Step> {
    let g = frame.group();
    let deg = chi
        .degree()
        .ok_or_else(|| Error::DecompositionFailure("degree is not an integer".into()))?;
    if deg == 1 {
        return Ok(Step::Done(as_linear(g, chi)?));
    }
    let p = frame.p_group();
    let res = restrict(g, p, chi)?;
    let table = char_table(p)?;
    let mut psi = None;
    for cand in table.irreducibles() {
        if multiplicity(&res, cand)? > 0 {
            psi = Some(cand);
            break;
        }
    }
    let psi = psi.ok_or_else(|| Error::DecompositionFailure("restriction to P has no constituent".into()))?;
    if psi.degree() == Some(1) {
        let theta = as_linear(p, psi)?;
        let cl = clifford_correspondent(g, p, &theta, chi)?;
        if cl.stabilizer().order() == g.order() {
            return Err(Error::DecompositionFailure(format!(
                "invariant linear constituent under a character of degree {deg}"
            )));
        }
        let d_theta = diag_centraliser(frame, frame.radical(), p, &theta)?;
        let space = d_theta.space().sum(frame.radical());
        let sub = Subalgebra::certify(frame.ambient(), space)
            .map_err(|e| Error::CertificationFailure(format!("D_theta + J: {e}")))?;
        let units = g.units_in(sub.space(), crate::group::GroupKind::Subgroup("units".into()))?;
        if !units.same_elements(cl.stabilizer()) {
            return Err(Error::CertificationFailure(
                "units of D_theta + J differ from G_theta".into(),
            ));
        }
        return Ok(Step::Descend {
            sub,
            group: cl.orbit.stabilizer,
            eta: cl.eta,
            branch: Branch::Linear,
        });
    }

    // psi is scalar on N = 1 + J^n for some least n >= 2
    let psi_deg = psi.degree().unwrap_or(0);
    let mut found = None;
    for n in 2..=frame.nilpotency_index() {
        let jn = frame.radical_power(n);
        let ng = frame.one_plus(jn)?;
        let mut scalar = None;
        for sigma in linear_characters(&ng)? {
            if linear_pairing(p, psi, &ng, &sigma)? == psi_deg {
                scalar = Some(sigma);
                break;
            }
        }
        if let Some(sigma) = scalar {
            found = Some((n, ng, sigma));
            break;
        }
    }
    let (n, ng, sigma) =
        found.ok_or_else(|| Error::DecompositionFailure("constituent is not scalar on any radical power".into()))?;
    if n == 2 && frame.radical().dim() == frame.radical_power(2).dim() + 1 {
        return Err(Error::DecompositionFailure(
            "degenerate layer: n = 2 and dim J = dim J^2 + 1".into(),
        ));
    }
    let layers = frame.layer_ideals(n)?;
    let mut chosen = None;
    for (i, l) in layers.iter().enumerate() {
        if pairs_nontrivially(frame, &ng, &sigma, l)? {
            chosen = Some((i, l.clone()));
            break;
        }
    }
    let (layer, l) = chosen.ok_or_else(|| Error::DecompositionFailure("sigma is trivial on every [P, Q_i]".into()))?;
    let s = SigmaData::new(frame, n, ng, sigma, l)?;
    let mut theta = None;
    for cand in linear_characters(&s.q_group)? {
        if extends(&s, &cand)? && linear_pairing(p, psi, &s.q_group, &cand)? > 0 {
            theta = Some(cand);
            break;
        }
    }
    let theta = theta.ok_or_else(|| Error::NoExtension("no extension of sigma under the constituent".into()))?;
    let cl = clifford_correspondent(g, &s.q_group, &theta, chi)?;
    if cl.stabilizer().order() == g.order() {
        return Err(Error::DecompositionFailure(
            "stabilizer of the extension is the whole group".into(),
        ));
    }
    let sub = certify_stabilizer_subalgebra(frame, cl.stabilizer())?;
    Ok(Step::Descend {
        sub,
        group: cl.orbit.stabilizer,
        eta: cl.eta,
        branch: Branch::Scalar { level: n, layer },
    })
}

/// `sigma([P, 1 + L]) != {1}`.
fn pairs_nontrivially(frame: &Frame, ng: &FiniteGroup, sigma: &LinearChar, l: &Subspace) -> Result<bool> {
    let g = frame.group();
    let p_emb = frame.p_group().embedding_into(g)?;
    let q = frame.one_plus(l)?;
    let q_emb = q.embedding_into(g)?;
    for &x in frame.p_group().generators() {
        for &y in q.generators() {
            let c = g.commutator(p_emb[x], q_emb[y]);
            let id = ng
                .id_of(g.element(c))
                .ok_or_else(|| Error::PreconditionFailure("[P, Q] is not inside N".into()))?;
            if sigma.exp(id) != 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
