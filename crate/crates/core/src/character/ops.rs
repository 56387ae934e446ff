use std::collections::HashMap;

use num::{BigInt, BigRational, ToPrimitive};

use super::Character;
use crate::error::{Error, Result};
use crate::exact_math::Cyclotomic;
use crate::group::{conjugacy_classes, FiniteGroup, LinearChar};

/// `(1/|G|) sum_g chi(g) conj(psi(g))`, computed class-wise.
pub fn inner_product(chi: &Character, psi: &Character) -> Result<Cyclotomic> {
    if chi.group_uid != psi.group_uid {
        return Err(Error::GroupMismatch);
    }
    let c = &chi.classes;
    let mut acc = Cyclotomic::zero(1);
    for k in 0..c.count() {
        let term = chi.values[k].mul(&psi.values[k].conj());
        acc.add_assign(&term.scale(&BigRational::from_integer(BigInt::from(c.sizes[k]))));
    }
    Ok(acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(c.group_order))))
}

/// Inner product as a nonnegative integer (for genuine characters).
pub fn multiplicity(chi: &Character, psi: &Character) -> Result<i64> {
    let ip = inner_product(chi, psi)?;
    integral(&ip)
}

fn integral(x: &Cyclotomic) -> Result<i64> {
    x.as_rational()
        .filter(|q| q.is_integer())
        .and_then(|q| q.to_integer().to_i64())
        .ok_or_else(|| Error::VerificationFailure(format!("expected an integer, got {x}")))
}

/// `<Res_Q chi, theta>` for `Q <= G` and a linear character `theta` of `Q`.
pub fn linear_pairing(g: &FiniteGroup, chi: &Character, q: &FiniteGroup, theta: &LinearChar) -> Result<i64> {
    chi.check_group(g)?;
    theta.check_group(q)?;
    let emb = q.embedding_into(g)?;
    let m = theta.conductor();
    let mut counts: HashMap<(usize, u32), i64> = HashMap::new();
    for (x, &gx) in emb.iter().enumerate() {
        *counts
            .entry((chi.classes.class_of[gx], (m - theta.exp(x)) % m))
            .or_default() += 1;
    }
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort_unstable();
    let mut acc = Cyclotomic::zero(1);
    for ((class, e), n) in keys {
        let term = chi.values[class].mul(&Cyclotomic::zeta(m, e as i64));
        acc.add_assign(&term.scale(&BigRational::from_integer(BigInt::from(n))));
    }
    let ip = acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(q.order())));
    integral(&ip)
}

/// `Res^G_H chi`.
pub fn restrict(g: &FiniteGroup, h: &FiniteGroup, chi: &Character) -> Result<Character> {
    chi.check_group(g)?;
    let emb = h.embedding_into(g)?;
    let hc = conjugacy_classes(h)?;
    let values = hc
        .reps
        .iter()
        .map(|&r| chi.values[chi.classes.class_of[emb[r]]].clone())
        .collect();
    Ok(Character::from_parts(h.uid(), hc, values))
}

/// `Ind_H^G chi` by `|G|/(|C||H|) sum_{h in H cap C} chi(h)` on each class `C`.
pub fn induce(g: &FiniteGroup, h: &FiniteGroup, chi: &Character) -> Result<Character> {
    chi.check_group(h)?;
    let emb = h.embedding_into(g)?;
    let gc = conjugacy_classes(g)?;
    let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
    for (x, &gx) in emb.iter().enumerate() {
        *counts.entry((gc.class_of[gx], chi.classes.class_of[x])).or_default() += 1;
    }
    let mut sums = vec![Cyclotomic::zero(1); gc.count()];
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort_unstable();
    for ((c, hc), n) in keys {
        sums[c].add_assign(&chi.values[hc].scale(&BigRational::from_integer(BigInt::from(n))));
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(c, s)| {
            s.scale(&BigRational::new(
                BigInt::from(g.order()),
                BigInt::from(gc.sizes[c] * h.order()),
            ))
        })
        .collect();
    Ok(Character::from_parts(g.uid(), gc, values))
}

/// Induction of a linear character, accumulating exponent counts in integers.
pub fn induce_linear(g: &FiniteGroup, h: &FiniteGroup, lambda: &LinearChar) -> Result<Character> {
    lambda.check_group(h)?;
    let emb = h.embedding_into(g)?;
    induce_linear_with(g, h.order(), &emb, lambda)
}

pub(crate) fn induce_linear_with(
    g: &FiniteGroup,
    h_order: usize,
    emb: &[usize],
    lambda: &LinearChar,
) -> Result<Character> {
    let gc = conjugacy_classes(g)?;
    let m = lambda.conductor() as usize;
    let mut counts = vec![vec![0i64; m]; gc.count()];
    for (x, &gx) in emb.iter().enumerate() {
        counts[gc.class_of[gx]][lambda.exp(x) as usize] += 1;
    }
    let values = counts
        .iter()
        .enumerate()
        .map(|(c, cs)| {
            let s = Cyclotomic::from_integers(m as u32, cs).expect("positive conductor");
            s.scale(&BigRational::new(
                BigInt::from(g.order()),
                BigInt::from(gc.sizes[c] * h_order),
            ))
        })
        .collect();
    Ok(Character::from_parts(g.uid(), gc, values))
}
