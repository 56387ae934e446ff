use std::collections::HashSet;

use num::Integer;
use serde::Serialize;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::exact_math::Cyclotomic;

/// `G/[G,G]` as a product of cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    /// Orders of the cyclic factors, non-increasing.
    pub divisors: Vec<u64>,
    /// Element ids of `[G,G]`.
    pub commutator: Vec<usize>,
    /// Coordinates of each element of `G` in the cyclic basis.
    pub projection: Vec<Vec<u32>>,
}

impl Abelianization {
    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.divisors.first().copied().unwrap_or(1)
    }
}

/// Normal closure of the commutators of a generating set.
fn commutator_subgroup(g: &FiniteGroup) -> Vec<usize> {
    let gens = g.generators().to_vec();
    let mut kgens: Vec<usize> = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = g.commutator(a, b);
            if c != 0 && !kgens.contains(&c) {
                kgens.push(c);
            }
        }
    }
    loop {
        let k = g.closure_ids(&kgens);
        let inside: HashSet<usize> = k.iter().copied().collect();
        let extra: Vec<usize> = gens
            .iter()
            .flat_map(|&s| kgens.iter().map(move |&x| (s, x)))
            .map(|(s, x)| g.conjugate(s, x))
            .filter(|y| !inside.contains(y))
            .collect();
        if extra.is_empty() {
            return k;
        }
        kgens.push(extra[0]);
    }
}

/// Commutator subgroup and cyclic decomposition of the quotient by
/// repeated extraction of an element of maximal order.
pub fn abelianization(g: &FiniteGroup) -> Result<Abelianization> {
    if g.order() as u64 > g.max_order() {
        return Err(Error::TooLarge {
            what: "group order",
            size: g.order() as u64,
            cap: g.max_order(),
        });
    }
    let n = g.order();
    let k = commutator_subgroup(g);
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] == usize::MAX {
            let c = reps.len();
            reps.push(x);
            for &y in &k {
                coset_of[g.mul(x, y)] = c;
            }
        }
    }
    let q = reps.len();
    let qmul = |a: usize, b: usize| coset_of[g.mul(reps[a], reps[b])];
    let qpow = |a: usize, e: u64| (0..e).fold(0usize, |acc, _| qmul(acc, a));

    let mut basis: Vec<usize> = Vec::new();
    let mut divisors: Vec<u64> = Vec::new();
    let mut coords: Vec<Option<Vec<u32>>> = vec![None; q];
    coords[0] = Some(Vec::new());
    let mut size = 1usize;
    while size < q {
        // element of maximal order modulo the current subgroup
        let mut best: Option<(u64, usize)> = None;
        for y in 0..q {
            if coords[y].is_some() {
                continue;
            }
            let mut z = y;
            let mut t = 1u64;
            while coords[z].is_none() {
                z = qmul(z, y);
                t += 1;
            }
            if best.is_none_or(|(bt, _)| t > bt) {
                best = Some((t, y));
            }
        }
        let (d, y) = best.expect("quotient not yet exhausted");
        let c = coords[qpow(y, d)].clone().expect("power lies in subgroup");
        // adjust y so that its d-th power is trivial
        let mut lifted = y;
        for (i, (&ci, &di)) in c.iter().zip(&divisors).enumerate() {
            let e = (0..di)
                .find(|&e| (d * e) % di == ci as u64 % di)
                .ok_or_else(|| Error::DecompositionFailure("cyclic factor does not split off".into()))?;
            lifted = qmul(lifted, qpow(basis[i], (di - e) % di));
        }
        debug_assert_eq!(qpow(lifted, d), 0);
        let old: Vec<(usize, Vec<u32>)> = coords
            .iter()
            .enumerate()
            .filter_map(|(s, c)| c.clone().map(|c| (s, c)))
            .collect();
        for (s, c) in old {
            let mut z = s;
            for e in 0..d {
                let mut cz = c.clone();
                cz.push(e as u32);
                if e > 0 {
                    debug_assert!(coords[z].is_none());
                }
                coords[z] = Some(cz);
                z = qmul(z, lifted);
            }
        }
        for c in coords.iter_mut().flatten() {
            c.resize(basis.len() + 1, 0);
        }
        basis.push(lifted);
        divisors.push(d);
        size *= d as usize;
    }
    let projection = (0..n)
        .map(|x| coords[coset_of[x]].clone().expect("all cosets reached"))
        .collect();
    Ok(Abelianization {
        divisors,
        commutator: k,
        projection,
    })
}

/// A homomorphism `H -> C^x`, `h -> z_m^{exps[h]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LinearChar {
    #[serde(skip)]
    group_uid: u64,
    m: u32,
    exps: Vec<u32>,
}

impl LinearChar {
    pub fn new(g: &FiniteGroup, m: u32, exps: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidConductor(0));
        }
        if exps.len() != g.order() {
            return Err(Error::DimensionMismatch {
                expected: g.order(),
                found: exps.len(),
            });
        }
        let exps: Vec<u32> = exps.into_iter().map(|e| e % m).collect();
        if exps[0] != 0 {
            return Err(Error::PreconditionFailure(
                "a linear character is 1 at the identity".into(),
            ));
        }
        Ok(Self {
            group_uid: g.uid(),
            m,
            exps,
        })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self {
            group_uid: g.uid(),
            m: 1,
            exps: vec![0; g.order()],
        }
    }

    pub fn group_uid(&self) -> u64 {
        self.group_uid
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, id: usize) -> u32 {
        self.exps[id]
    }

    pub fn value(&self, id: usize) -> Cyclotomic {
        Cyclotomic::zeta(self.m, self.exps[id] as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u32 {
        let g = self.exps.iter().fold(self.m, |acc, &e| acc.gcd(&e));
        self.m / g.max(1)
    }

    /// Same character with the conductor reduced to its order.
    pub fn normalized(&self) -> Self {
        let g = self.exps.iter().fold(self.m, |acc, &e| acc.gcd(&e)).max(1);
        Self {
            group_uid: self.group_uid,
            m: self.m / g,
            exps: self.exps.iter().map(|&e| e / g).collect(),
        }
    }

    /// Pointwise equality of values.
    pub fn same_values(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        self.group_uid == other.group_uid && a.m == b.m && a.exps == b.exps
    }

    pub fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if self.group_uid != g.uid() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Exhaustive homomorphism check.
    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        (0..n).all(|a| (0..n).all(|b| self.exps[g.mul(a, b)] == (self.exps[a] + self.exps[b]) % self.m))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.group_uid != other.group_uid {
            return Err(Error::GroupMismatch);
        }
        let l = self.m.lcm(&other.m);
        let (s, t) = (l / self.m, l / other.m);
        Ok(Self {
            group_uid: self.group_uid,
            m: l,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| (a * s + b * t) % l)
                .collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            group_uid: self.group_uid,
            m: self.m,
            exps: self.exps.iter().map(|&e| (self.m - e) % self.m).collect(),
        }
    }

    /// Restriction to a subgroup `h` of `g`.
    pub fn restrict(&self, g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        self.check_group(g)?;
        let emb = h.embedding_into(g)?;
        Ok(Self {
            group_uid: h.uid(),
            m: self.m,
            exps: emb.iter().map(|&x| self.exps[x]).collect(),
        })
    }

    /// `x -> self(g x g^-1)` for `g` in an overgroup in which `q` is normal.
    pub fn conjugate_by(&self, q: &FiniteGroup, over: &FiniteGroup, emb: &[usize], g: usize) -> Result<Self> {
        self.check_group(q)?;
        let exps = emb
            .iter()
            .map(|&x| {
                let y = over.conjugate(g, x);
                q.id_of(over.element(y)).map(|id| self.exps[id]).ok_or(Error::NotNormal)
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(Self {
            group_uid: self.group_uid,
            m: self.m,
            exps,
        })
    }
}

/// All linear characters, ordered lexicographically by their coordinates
/// in the dual cyclic basis; conductor is the exponent of `G^ab`.
pub fn linear_characters(g: &FiniteGroup) -> Result<Vec<LinearChar>> {
    let ab = abelianization(g)?;
    let m = ab.exponent() as u32;
    let mut out = Vec::with_capacity(ab.order() as usize);
    for t in crate::algebra::all_vectors_mixed(&ab.divisors) {
        let exps = ab
            .projection
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&t)
                    .zip(&ab.divisors)
                    .map(|((&ci, &ti), &di)| ci as u64 * ti as u64 * (m as u64 / di))
                    .sum::<u64>()
                    % m as u64
            })
            .map(|e| e as u32)
            .collect();
        out.push(LinearChar {
            group_uid: g.uid(),
            m,
            exps,
        });
    }
    Ok(out)
}
