use std::sync::Arc;

use crate::algebra::{
    basic_decomposition, bimodule_complement, bimodule_decompose, one_dimensional_refinement, radical_power, Algebra,
    BasicDecomposition, Subalgebra, Subspace,
};
use crate::error::{Error, Result};
use crate::group::{unit_group, FiniteGroup, GroupKind};

/// A subalgebra `B` of an ambient algebra together with its unit group and
/// the standard pieces `D`, `J`, `P = 1 + J` and `T = D^x`.
///
/// Subspaces are held in ambient coordinates; structural computations
/// (radical, idempotents, bimodule pieces) run on `B` as a standalone
/// algebra on its echelon basis.
#[derive(Debug)]
pub struct Frame {
    ambient: Arc<Algebra>,
    sub: Subalgebra,
    local: Algebra,
    dec: BasicDecomposition,
    idempotents: Vec<Vec<u32>>,
    diagonal: Subspace,
    /// `local_powers[k]` is `J^(k+1)` in local coordinates; the last entry is zero.
    local_powers: Vec<Subspace>,
    powers: Vec<Subspace>,
    group: FiniteGroup,
    p_group: FiniteGroup,
    t_group: FiniteGroup,
}

impl Frame {
    /// Frame of the whole algebra.
    pub fn new(alg: &Arc<Algebra>, max_order: u64) -> Result<Self> {
        let group = unit_group(alg, max_order)?;
        Self::build(alg.clone(), Subalgebra::whole(alg), group)
    }

    /// Frame of a subalgebra of this frame's algebra; `group` must consist of
    /// exactly the units of `sub`.
    pub fn restricted(&self, sub: Subalgebra, group: FiniteGroup) -> Result<Self> {
        if !sub.space().is_subspace_of(self.sub.space()) {
            return Err(Error::PreconditionFailure("not a subalgebra of the frame".into()));
        }
        Self::build(self.ambient.clone(), sub, group)
    }

    fn build(ambient: Arc<Algebra>, sub: Subalgebra, group: FiniteGroup) -> Result<Self> {
        if !sub.contains_one() || !sub.mult_closed() {
            return Err(Error::PreconditionFailure("frame requires a unital subalgebra".into()));
        }
        match group.law().algebra() {
            Some(a) if Arc::ptr_eq(a, &ambient) || **a == *ambient => {}
            _ => return Err(Error::GroupMismatch),
        }
        let local = sub.to_algebra(&ambient);
        let dec = basic_decomposition(&local)?;
        let lift = |s: &Subspace| -> Subspace {
            let rows: Vec<Vec<u32>> = s.basis().iter().map(|r| sub.embed(r)).collect();
            Subspace::of(&ambient, &rows)
        };
        let idempotents: Vec<Vec<u32>> = dec.idempotents.iter().map(|e| sub.embed(e)).collect();
        let diagonal = lift(dec.diagonal.space());
        let mut local_powers = Vec::new();
        for k in 1.. {
            let jk = radical_power(&local, &dec.radical, k)?.space().clone();
            let done = jk.is_zero();
            local_powers.push(jk);
            if done {
                break;
            }
        }
        let powers: Vec<Subspace> = local_powers.iter().map(lift).collect();

        let p = ambient.p() as u64;
        let expected = (p - 1).pow(dec.rank() as u32) * p.pow(dec.radical.dim() as u32);
        if group.order() as u64 != expected || !group.elements().all(|e| sub.contains(e)) {
            return Err(Error::CertificationFailure(format!(
                "group of order {} is not the unit group of a subalgebra with {expected} units",
                group.order()
            )));
        }
        let one = ambient.one().to_vec();
        let p_ids: Vec<usize> = (0..group.order())
            .filter(|&g| powers[0].contains(&ambient.sub(group.element(g), &one)))
            .collect();
        let p_group = group.subgroup_from_ids(&p_ids, GroupKind::IdealSubgroup)?;
        let t_ids: Vec<usize> = (0..group.order())
            .filter(|&g| diagonal.contains(group.element(g)))
            .collect();
        let t_group = group.subgroup_from_ids(&t_ids, GroupKind::Diagonal)?;
        Ok(Self {
            ambient,
            sub,
            local,
            dec,
            idempotents,
            diagonal,
            local_powers,
            powers,
            group,
            p_group,
            t_group,
        })
    }

    pub fn ambient(&self) -> &Arc<Algebra> {
        &self.ambient
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        &self.sub
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    /// The subalgebra as a standalone algebra on its echelon basis.
    pub fn local(&self) -> &Algebra {
        &self.local
    }

    pub fn idempotents(&self) -> &[Vec<u32>] {
        &self.idempotents
    }

    pub fn diagonal(&self) -> &Subspace {
        &self.diagonal
    }

    pub fn radical(&self) -> &Subspace {
        &self.powers[0]
    }

    /// `J^n` for `n >= 1`; zero beyond the nilpotency index.
    pub fn radical_power(&self, n: usize) -> &Subspace {
        assert!(n >= 1, "radical powers start at 1");
        &self.powers[(n - 1).min(self.powers.len() - 1)]
    }

    /// Largest `m` with `J^m != 0`; zero when `J = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `P = 1 + J`.
    pub fn p_group(&self) -> &FiniteGroup {
        &self.p_group
    }

    /// `T = D^x`.
    pub fn t_group(&self) -> &FiniteGroup {
        &self.t_group
    }

    /// Two-sided ideal of the frame's subalgebra.
    pub fn is_ideal(&self, space: &Subspace) -> bool {
        space.is_subspace_of(self.sub.space())
            && self.sub.space().basis().iter().all(|b| {
                space
                    .basis()
                    .iter()
                    .all(|r| space.contains(&self.ambient.mul(b, r)) && space.contains(&self.ambient.mul(r, b)))
            })
    }

    /// `1 + I` for a subspace `I` of the radical, as a subgroup of the unit group.
    pub fn one_plus(&self, space: &Subspace) -> Result<FiniteGroup> {
        if !space.is_subspace_of(self.radical()) {
            return Err(Error::NotInsideRadical);
        }
        let one = self.ambient.one().to_vec();
        let ids: Vec<usize> = (0..self.group.order())
            .filter(|&g| space.contains(&self.ambient.sub(self.group.element(g), &one)))
            .collect();
        self.group.subgroup_from_ids(&ids, GroupKind::IdealSubgroup)
    }

    /// Ideals `L_i = J^n + k u_i` with `u_i` running over the one-dimensional
    /// homogeneous pieces of a bimodule complement of `J^n` in `J^(n-1)`,
    /// in the order of the decomposition.
    pub fn layer_ideals(&self, n: usize) -> Result<Vec<Subspace>> {
        if n < 2 {
            return Err(Error::PreconditionFailure("layers start at n = 2".into()));
        }
        let upper = &self.local_powers[(n - 2).min(self.local_powers.len() - 1)];
        let lower = &self.local_powers[(n - 1).min(self.local_powers.len() - 1)];
        let complement = bimodule_complement(&self.local, &self.dec, upper, lower)?;
        if complement.is_zero() {
            return Ok(Vec::new());
        }
        let pieces = one_dimensional_refinement(&bimodule_decompose(&self.local, &self.dec, &complement)?);
        let base = self.radical_power(n);
        Ok(pieces
            .into_iter()
            .map(|(_, _, u)| base.with_vector(&self.sub.embed(&u)))
            .collect())
    }

    /// Ambient-coordinate image of a local subspace.
    pub fn lift(&self, local: &Subspace) -> Subspace {
        let rows: Vec<Vec<u32>> = local.basis().iter().map(|r| self.sub.embed(r)).collect();
        Subspace::of(&self.ambient, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::group::DEFAULT_MAX_ORDER;

    fn frame(n: usize, p: u32) -> Frame {
        let a = Arc::new(AlgebraSpec::borel(n, p).build().unwrap());
        Frame::new(&a, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn top_frame_pieces() {
        let f = frame(3, 2);
        assert_eq!(f.group().order(), 8);
        assert_eq!(f.p_group().order(), 8);
        assert_eq!(f.t_group().order(), 1);
        assert_eq!(f.radical().dim(), 3);
        assert_eq!(f.radical_power(2).dim(), 1);
        assert_eq!(f.nilpotency_index(), 2);
        let f = frame(2, 3);
        assert_eq!(
            (f.group().order(), f.p_group().order(), f.t_group().order()),
            (12, 3, 4)
        );
    }

    #[test]
    fn layers_of_u3() {
        let f = frame(3, 2);
        let layers = f.layer_ideals(2).unwrap();
        assert_eq!(layers.len(), 2);
        let a = f.ambient();
        // basis e11 e12 e13 e22 e23 e33
        assert_eq!(layers[0], Subspace::of(a, &[a.basis(1), a.basis(2)]));
        assert_eq!(layers[1], Subspace::of(a, &[a.basis(2), a.basis(4)]));
        assert!(layers.iter().all(|l| f.is_ideal(l)));
    }

    #[test]
    fn restricted_frames_check_the_group() {
        let f = frame(2, 3);
        let a = f.ambient().clone();
        let zp = Subalgebra::certify(&a, Subspace::of(&a, &[a.one().to_vec(), a.basis(1)])).unwrap();
        let h = f
            .group()
            .units_in(zp.space(), GroupKind::Subgroup("ZP".into()))
            .unwrap();
        let g = f.restricted(zp.clone(), h).unwrap();
        assert_eq!(g.group().order(), 6);
        assert_eq!(g.idempotents().len(), 1);
        assert_eq!(g.radical().dim(), 1);
        let wrong = f
            .group()
            .subgroup_from_ids(&[0], GroupKind::Subgroup("trivial".into()))
            .unwrap();
        assert!(matches!(f.restricted(zp, wrong), Err(Error::CertificationFailure(_))));
    }
}
