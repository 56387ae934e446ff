use std::collections::BTreeSet;

use super::Frame;
use crate::algebra::{Subalgebra, Subspace};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, LinearChar};

/// `D_theta = { d in D : theta(1 + a d) = theta(1 + d a) for all a in I }` for
/// a character `theta` of `Q = 1 + I`, `I` an ideal inside the radical.
/// Certified to be a unital subalgebra whose units are the stabilizer
/// `T_theta` of `theta` in `T`.
pub fn diag_centraliser(frame: &Frame, ideal: &Subspace, q: &FiniteGroup, theta: &LinearChar) -> Result<Subalgebra> {
    theta.check_group(q)?;
    if !frame.is_ideal(ideal) {
        return Err(Error::PreconditionFailure("I is not an ideal".into()));
    }
    if !frame.one_plus(ideal)?.same_elements(q) {
        return Err(Error::PreconditionFailure("Q is not 1 + I".into()));
    }
    let alg = frame.ambient();
    let one = alg.one();
    let exp_at = |v: &[u32]| -> u32 {
        let id = q.id_of(&alg.add(one, v)).expect("1 + I is closed");
        theta.exp(id)
    };
    let members: Vec<Vec<u32>> = frame
        .diagonal()
        .elements()
        .filter(|d| {
            ideal
                .elements()
                .all(|a| exp_at(&alg.mul(&a, d)) == exp_at(&alg.mul(d, &a)))
        })
        .collect();
    let span = Subspace::of(alg, &members);
    if span.size() != members.len() as u64 {
        return Err(Error::CertificationFailure("D_theta is not a subspace".into()));
    }
    let sub = Subalgebra::certify(alg, span).map_err(|e| Error::CertificationFailure(format!("D_theta: {e}")))?;

    // units of D_theta against the stabilizer of theta in T
    let g = frame.group();
    let t = frame.t_group();
    let t_emb = t.embedding_into(g)?;
    let q_emb = q.embedding_into(g)?;
    let fixed: BTreeSet<usize> = (0..t.order())
        .filter(|&x| {
            q.generators().iter().all(|&y| {
                let z = g.conjugate(t_emb[x], q_emb[y]);
                q.id_of(g.element(z)).is_some_and(|id| theta.exp(id) == theta.exp(y))
            })
        })
        .collect();
    let units: BTreeSet<usize> = (0..t.order()).filter(|&x| sub.contains(t.element(x))).collect();
    if fixed != units {
        return Err(Error::CertificationFailure(
            "units of D_theta differ from T_theta".into(),
        ));
    }
    Ok(sub)
}

/// The linear span of a stabilizer `G_theta`, certified to be a unital
/// subalgebra whose unit group is exactly `G_theta`.
///
/// If `G_theta` is the unit group of any subalgebra `C`, the span lies in `C`
/// and is itself a subalgebra with the same units, so the span alone decides.
pub fn certify_stabilizer_subalgebra(frame: &Frame, g_theta: &FiniteGroup) -> Result<Subalgebra> {
    if !g_theta.is_subgroup_of(frame.group()) {
        return Err(Error::NotSubgroup);
    }
    let alg = frame.ambient();
    let elems: Vec<Vec<u32>> = g_theta.elements().map(<[u32]>::to_vec).collect();
    let span = Subspace::of(alg, &elems);
    let sub = Subalgebra::certify(alg, span)
        .map_err(|e| Error::CertificationFailure(format!("span of the stabilizer: {e}")))?;
    let units = frame
        .group()
        .units_in(sub.space(), crate::group::GroupKind::Subgroup("span units".into()))?;
    if !units.same_elements(g_theta) {
        return Err(Error::CertificationFailure(format!(
            "the span has {} units, the stabilizer has order {}",
            units.order(),
            g_theta.order()
        )));
    }
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::group::{char_orbit, linear_characters, DEFAULT_MAX_ORDER};
    use std::sync::Arc;

    fn frame(n: usize, p: u32) -> Frame {
        let a = Arc::new(AlgebraSpec::borel(n, p).build().unwrap());
        Frame::new(&a, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn centraliser_on_b2_f3() {
        let f = frame(2, 3);
        let p = f.p_group();
        let chars = linear_characters(p).unwrap();
        let scalars = Subspace::of(f.ambient(), &[f.ambient().one().to_vec()]);
        for theta in &chars {
            let d = diag_centraliser(&f, f.radical(), p, theta).unwrap();
            if theta.is_trivial() {
                assert_eq!(d.space(), f.diagonal());
            } else {
                assert_eq!(*d.space(), scalars);
            }
        }
    }

    #[test]
    fn centraliser_over_f2() {
        // T is trivial, so the unit group of D_theta is always T, but the
        // subspace itself shrinks by one dimension per nontrivial simple root
        let f = frame(3, 2);
        let a = f.ambient();
        let p = f.p_group();
        let at = |i: usize| p.id_of(&a.add(a.one(), &a.basis(i))).unwrap();
        let (e12, e23) = (at(1), at(4));
        for theta in linear_characters(p).unwrap() {
            let d = diag_centraliser(&f, f.radical(), p, &theta).unwrap();
            let nontrivial = [e12, e23].iter().filter(|&&x| theta.exp(x) != 0).count();
            assert_eq!(d.dim(), 3 - nontrivial);
            let units = f
                .group()
                .units_in(d.space(), crate::group::GroupKind::Diagonal)
                .unwrap();
            assert!(units.same_elements(f.t_group()));
        }
    }

    #[test]
    fn stabilizer_subalgebras() {
        let f = frame(2, 3);
        let a = f.ambient();
        let p = f.p_group();
        let theta = &linear_characters(p).unwrap()[1];
        let orbit = char_orbit(f.group(), p, theta).unwrap();
        let sub = certify_stabilizer_subalgebra(&f, &orbit.stabilizer).unwrap();
        assert_eq!(*sub.space(), Subspace::of(a, &[a.one().to_vec(), a.basis(1)]));
        let whole = certify_stabilizer_subalgebra(&f, f.group()).unwrap();
        assert_eq!(whole.dim(), 3);
    }

    #[test]
    fn non_unit_groups_fail_certification() {
        // diag(1, -1) spans D, whose unit group has order 4
        let f = frame(2, 3);
        let a = f.ambient();
        let g = f.group();
        let x = g.id_of(&[1, 0, 2]).unwrap();
        let h = g
            .subgroup_generated(&[x], crate::group::GroupKind::Subgroup("c2".into()))
            .unwrap();
        assert_eq!(h.order(), 2);
        assert!(matches!(
            certify_stabilizer_subalgebra(&f, &h),
            Err(Error::CertificationFailure(_))
        ));
        let minus = g.id_of(&[2, 0, 2]).unwrap();
        let h = g
            .subgroup_generated(&[minus], crate::group::GroupKind::Subgroup("scalars".into()))
            .unwrap();
        let sub = certify_stabilizer_subalgebra(&f, &h).unwrap();
        assert_eq!(*sub.space(), Subspace::of(a, &[a.one().to_vec()]));
    }
}
