use std::collections::HashSet;
use std::sync::Arc;

use super::{ideal_subgroup, linear_characters, unit_group_from, FiniteGroup, GroupKind, LinearChar};
use crate::algebra::{basic_decomposition, AlgebraSpec};
use crate::error::{Error, Result};

/// Orbit of a linear character of a normal subgroup `Q` under conjugation
/// by `G`, with `theta^g(x) = theta(g x g^-1)`.
#[derive(Debug)]
pub struct CharOrbit {
    pub base: LinearChar,
    /// Orbit members, in order of the least `g` producing them; `base` first.
    pub members: Vec<LinearChar>,
    /// Ids in `G` of the stabilizer elements.
    pub stabilizer_ids: Vec<usize>,
    pub stabilizer: FiniteGroup,
}

impl CharOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, theta: &LinearChar) -> bool {
        self.members.iter().any(|m| m.same_values(theta))
    }
}

pub fn char_orbit(g: &FiniteGroup, q: &FiniteGroup, theta: &LinearChar) -> Result<CharOrbit> {
    theta.check_group(q)?;
    if !q.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let emb = q.embedding_into(g)?;
    let qgens = q.generators().to_vec();
    // A character of Q is determined by its values on generators.
    let key = |g_id: usize| -> Vec<u32> {
        qgens
            .iter()
            .map(|&x| {
                let y = g.conjugate(g_id, emb[x]);
                theta.exp(q.id_of(g.element(y)).expect("normal subgroup"))
            })
            .collect()
    };
    let base_key = key(0);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut members = Vec::new();
    let mut stabilizer_ids = Vec::new();
    for x in 0..g.order() {
        let k = key(x);
        if k == base_key {
            stabilizer_ids.push(x);
        }
        if seen.insert(k) {
            members.push(theta.conjugate_by(q, g, &emb, x)?);
        }
    }
    let stabilizer = g.subgroup_from_ids(&stabilizer_ids, GroupKind::Subgroup("stabilizer".into()))?;
    Ok(CharOrbit {
        base: theta.clone(),
        members,
        stabilizer_ids,
        stabilizer,
    })
}

/// Partition of all linear characters of `Q` into `G`-orbits.
pub fn char_orbits(g: &FiniteGroup, q: &FiniteGroup) -> Result<Vec<CharOrbit>> {
    let chars = linear_characters(q)?;
    let mut orbits: Vec<CharOrbit> = Vec::new();
    for c in chars {
        if orbits.iter().any(|o| o.contains(&c)) {
            continue;
        }
        orbits.push(char_orbit(g, q, &c)?);
    }
    Ok(orbits)
}

/// Number of `G`-orbits on the characters of `P = 1 + J` for `G = B_2(F_q)^x`.
pub fn orbit_count_p_dual(q: u32) -> Result<usize> {
    let alg = Arc::new(AlgebraSpec::borel(2, q).build()?);
    let dec = basic_decomposition(&alg)?;
    let g = unit_group_from(&alg, &dec, u64::MAX)?;
    let p = ideal_subgroup(&alg, &dec.radical, dec.radical.space(), u64::MAX)?;
    Ok(char_orbits(&g, &p)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{radical, radical_power};
    use crate::group::tests::borel;
    use crate::group::{unit_group, DEFAULT_MAX_ORDER};

    #[test]
    fn borel_2_3_orbits() {
        let a = borel(2, 3);
        let dec = basic_decomposition(&a).unwrap();
        let g = unit_group(&a, DEFAULT_MAX_ORDER).unwrap();
        let p = ideal_subgroup(&a, &dec.radical, dec.radical.space(), DEFAULT_MAX_ORDER).unwrap();
        let chars = linear_characters(&p).unwrap();
        let o = char_orbit(&g, &p, &chars[1]).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o.stabilizer.order(), 6);
        assert_eq!(o.len() * o.stabilizer.order(), g.order());
        let o = char_orbit(&g, &p, &chars[0]).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o.stabilizer.order(), 12);
    }

    #[test]
    fn central_characters_are_fixed() {
        let a = borel(3, 2);
        let j = radical(&a).unwrap();
        let j2 = radical_power(&a, &j, 2).unwrap();
        let g = unit_group(&a, DEFAULT_MAX_ORDER).unwrap();
        let n = ideal_subgroup(&a, &j, j2.space(), DEFAULT_MAX_ORDER).unwrap();
        let chars = linear_characters(&n).unwrap();
        let o = char_orbit(&g, &n, &chars[1]).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o.stabilizer.order(), 8);
    }

    #[test]
    fn non_normal_subgroups_are_rejected() {
        let a = borel(2, 3);
        let dec = basic_decomposition(&a).unwrap();
        let g = unit_group(&a, DEFAULT_MAX_ORDER).unwrap();
        let t = crate::group::diagonal_subgroup(&a, &dec, DEFAULT_MAX_ORDER).unwrap();
        let chars = linear_characters(&t).unwrap();
        assert_eq!(char_orbit(&g, &t, &chars[0]).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn two_orbits_on_p_dual() {
        for q in [2, 3, 5, 7] {
            assert_eq!(orbit_count_p_dual(q).unwrap(), 2, "q = {q}");
        }
    }

    #[test]
    fn orbit_stabilizer_on_corpus() {
        for (n, p) in [(2, 5), (3, 2), (3, 3)] {
            let a = borel(n, p);
            let dec = basic_decomposition(&a).unwrap();
            let g = unit_group(&a, DEFAULT_MAX_ORDER).unwrap();
            let q = ideal_subgroup(&a, &dec.radical, dec.radical.space(), DEFAULT_MAX_ORDER).unwrap();
            let orbits = char_orbits(&g, &q).unwrap();
            let total: usize = orbits.iter().map(CharOrbit::len).sum();
            assert_eq!(total, linear_characters(&q).unwrap().len());
            for o in &orbits {
                assert_eq!(o.len() * o.stabilizer.order(), g.order());
            }
        }
    }
}
