use std::collections::HashMap;

use num::{BigInt, BigRational};

use super::ops::{induce, linear_pairing, multiplicity};
use super::Character;
use crate::error::{Error, Result};
use crate::exact_math::Cyclotomic;
use crate::group::{char_orbit, conjugacy_classes, CharOrbit, FiniteGroup, LinearChar};

/// The stabilizer `G_theta` and the irreducible `eta` of it lying over
/// `theta` with `Ind eta = chi`.
#[derive(Debug)]
pub struct CliffordData {
    pub orbit: CharOrbit,
    pub eta: Character,
}

impl CliffordData {
    pub fn stabilizer(&self) -> &FiniteGroup {
        &self.orbit.stabilizer
    }
}

/// `eta` is the character of the `theta`-isotypic part of `Res chi`:
/// `eta(s) = (1/|Q|) sum_q conj(theta(q)) chi(s q)`. It is then checked to
/// be irreducible of the right degree and to induce to `chi`.
pub fn clifford_correspondent(
    g: &FiniteGroup,
    q: &FiniteGroup,
    theta: &LinearChar,
    chi: &Character,
) -> Result<CliffordData> {
    chi.check_group(g)?;
    if linear_pairing(g, chi, q, theta)? == 0 {
        return Err(Error::NotOverTheta);
    }
    let orbit = char_orbit(g, q, theta)?;
    let stab = &orbit.stabilizer;
    let index = (g.order() / stab.order()) as i64;
    let deg = chi
        .degree()
        .ok_or_else(|| Error::CliffordFailure("character degree is not an integer".into()))?;
    let s_emb = stab.embedding_into(g)?;
    let q_emb = q.embedding_into(g)?;
    let sc = conjugacy_classes(stab)?;
    let m = theta.conductor();
    let inv_q = BigRational::new(BigInt::from(1), BigInt::from(q.order()));
    let values = sc
        .reps
        .iter()
        .map(|&s| {
            let mut counts: HashMap<(usize, u32), i64> = HashMap::new();
            for (x, &gx) in q_emb.iter().enumerate() {
                let y = g.mul(s_emb[s], gx);
                *counts
                    .entry((chi.classes().class_of[y], (m - theta.exp(x)) % m))
                    .or_default() += 1;
            }
            let mut keys: Vec<_> = counts.into_iter().collect();
            keys.sort_unstable();
            let mut acc = Cyclotomic::zero(1);
            for ((class, e), n) in keys {
                let term = chi.value(class).mul(&Cyclotomic::zeta(m, e as i64));
                acc.add_assign(&term.scale(&BigRational::from_integer(BigInt::from(n))));
            }
            acc.scale(&inv_q)
        })
        .collect();
    let eta = Character::from_parts(stab.uid(), sc, values);
    if eta.degree().map(|d| d * index) != Some(deg) {
        return Err(Error::CliffordFailure("isotypic part has the wrong degree".into()));
    }
    if multiplicity(&eta, &eta)? != 1 {
        return Err(Error::CliffordFailure("isotypic part is not irreducible".into()));
    }
    if induce(g, stab, &eta)? != *chi {
        return Err(Error::CliffordFailure(
            "isotypic part does not induce to the character".into(),
        ));
    }
    Ok(CliffordData { orbit, eta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{basic_decomposition, radical, radical_power, AlgebraSpec};
    use crate::character::char_table;
    use crate::group::{ideal_subgroup, linear_characters, unit_group, DEFAULT_MAX_ORDER};
    use std::sync::Arc;

    #[test]
    fn borel_2_3_correspondents() {
        let a = Arc::new(AlgebraSpec::borel(2, 3).build().unwrap());
        let dec = basic_decomposition(&a).unwrap();
        let g = unit_group(&a, DEFAULT_MAX_ORDER).unwrap();
        let p = ideal_subgroup(&a, &dec.radical, dec.radical.space(), DEFAULT_MAX_ORDER).unwrap();
        let theta = &linear_characters(&p).unwrap()[1];
        let t = char_table(&g).unwrap();
        let chi = &t.irreducibles()[4];
        let c = clifford_correspondent(&g, &p, theta, chi).unwrap();
        assert_eq!(c.stabilizer().order(), 6);
        assert_eq!(c.eta.degree(), Some(1));
        assert_eq!(induce(&g, c.stabilizer(), &c.eta).unwrap(), *chi);

        let lin = &t.irreducibles()[1];
        assert_eq!(
            clifford_correspondent(&g, &p, theta, lin).unwrap_err(),
            Error::NotOverTheta
        );
    }

    #[test]
    fn invariant_theta_gives_chi_back() {
        let a = Arc::new(AlgebraSpec::borel(3, 2).build().unwrap());
        let j = radical(&a).unwrap();
        let j2 = radical_power(&a, &j, 2).unwrap();
        let g = unit_group(&a, DEFAULT_MAX_ORDER).unwrap();
        let n = ideal_subgroup(&a, &j, j2.space(), DEFAULT_MAX_ORDER).unwrap();
        let theta = &linear_characters(&n).unwrap()[1];
        let t = char_table(&g).unwrap();
        let chi = &t.irreducibles()[4];
        assert_eq!(chi.degree(), Some(2));
        let c = clifford_correspondent(&g, &n, theta, chi).unwrap();
        assert_eq!(c.stabilizer().order(), g.order());
        assert_eq!(c.eta.values(), chi.values());
    }
}
