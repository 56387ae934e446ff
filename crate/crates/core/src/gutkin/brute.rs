use std::collections::HashMap;

use super::Frame;
use crate::algebra::{enumerate_subalgebras, Subalgebra, SubalgebraBounds, Subspace};
use crate::character::{char_table, induce_linear_with};
use crate::error::{Error, Result};
use crate::group::{linear_characters, GroupKind, LinearChar};

/// First witness found for one irreducible.
#[derive(Debug, Clone)]
pub struct BruteWitness {
    /// Index into [`BruteReport::subalgebras`].
    pub subalgebra: usize,
    pub h_order: usize,
    pub lambda: LinearChar,
}

/// Outcome of the exhaustive search over subalgebras and their linear
/// characters.
#[derive(Debug)]
pub struct BruteReport {
    pub subalgebras: Vec<Subalgebra>,
    /// `(subalgebra, lambda)` pairs whose induced character was compared.
    pub candidates: usize,
    pub witness_counts: Vec<usize>,
    pub first: Vec<Option<BruteWitness>>,
    /// Per irreducible, indices of subalgebras carrying at least one witness.
    pub witnessing: Vec<Vec<usize>>,
    index: HashMap<Subspace, usize>,
}

impl BruteReport {
    /// Whether `space` carries a witness for irreducible `chi`.
    pub fn witnesses(&self, chi: usize, space: &Subspace) -> bool {
        self.index
            .get(space)
            .is_some_and(|i| self.witnessing[chi].binary_search(i).is_ok())
    }
}

/// Every irreducible of the frame's unit group is checked for some pair
/// `(B, lambda)` with `Ind_{B^x} lambda` equal to it.
pub fn verify_gutkin_brute(frame: &Frame, bounds: &SubalgebraBounds) -> Result<BruteReport> {
    let g = frame.group();
    let table = char_table(g)?;
    let degrees = table.degrees();
    let subalgebras: Vec<Subalgebra> = enumerate_subalgebras(frame.local(), bounds)?
        .into_iter()
        .map(|s| {
            let space = frame.lift(s.space());
            Subalgebra::certify(frame.ambient(), space)
        })
        .collect::<Result<_>>()?;
    let r = table.len();
    let mut counts = vec![0usize; r];
    let mut first: Vec<Option<BruteWitness>> = vec![None; r];
    let mut witnessing: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut candidates = 0;
    for (si, sub) in subalgebras.iter().enumerate() {
        let h = g.units_in(sub.space(), GroupKind::Subgroup("brute".into()))?;
        let index = (g.order() / h.order()) as i64;
        if !degrees.contains(&index) {
            continue;
        }
        let emb = h.embedding_into(g)?;
        for lambda in linear_characters(&h)? {
            candidates += 1;
            let ind = induce_linear_with(g, h.order(), &emb, &lambda)?;
            for (ci, chi) in table.irreducibles().iter().enumerate() {
                if degrees[ci] == index && *chi == ind {
                    counts[ci] += 1;
                    if witnessing[ci].last() != Some(&si) {
                        witnessing[ci].push(si);
                    }
                    if first[ci].is_none() {
                        first[ci] = Some(BruteWitness {
                            subalgebra: si,
                            h_order: h.order(),
                            lambda: lambda.clone(),
                        });
                    }
                    break;
                }
            }
        }
    }
    let missing: Vec<usize> = (0..r).filter(|&i| counts[i] == 0).collect();
    if !missing.is_empty() {
        return Err(Error::VerificationFailure(format!(
            "irreducibles without a witness: {missing:?}"
        )));
    }
    let index = subalgebras
        .iter()
        .enumerate()
        .map(|(i, s)| (s.space().clone(), i))
        .collect();
    Ok(BruteReport {
        subalgebras,
        candidates,
        witness_counts: counts,
        first,
        witnessing,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::group::DEFAULT_MAX_ORDER;
    use std::sync::Arc;

    fn frame(spec: AlgebraSpec) -> Frame {
        Frame::new(&Arc::new(spec.build().unwrap()), DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn borel_witnesses() {
        let f = frame(AlgebraSpec::borel(2, 3));
        let r = verify_gutkin_brute(&f, &SubalgebraBounds::default()).unwrap();
        assert_eq!(r.witness_counts.len(), 6);
        assert!(r.witness_counts.iter().all(|&c| c > 0));
        let f = frame(AlgebraSpec::borel(3, 2));
        let r = verify_gutkin_brute(&f, &SubalgebraBounds::default()).unwrap();
        assert_eq!(r.witness_counts.len(), 5);
    }

    #[test]
    fn diagonal_algebras_witness_themselves() {
        let f = frame(AlgebraSpec::diagonal(2, 3));
        let r = verify_gutkin_brute(&f, &SubalgebraBounds::default()).unwrap();
        assert_eq!(r.witness_counts.len(), 4);
        for chi in 0..4 {
            assert!(r.witnesses(chi, f.subalgebra().space()));
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let f = frame(AlgebraSpec::borel(3, 3));
        let tight = SubalgebraBounds::default().with_max_dim(3, 4);
        assert!(matches!(verify_gutkin_brute(&f, &tight), Err(Error::TooLarge { .. })));
    }
}
