//! Enumerated finite groups: unit groups of algebras, their subgroups, and
//! unit groups of residue rings.

mod abelian;
mod classes;
mod orbit;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::algebra::{basic_decomposition, Algebra, BasicDecomposition, Ideal, Subspace};
use crate::error::{Error, Result};

pub use abelian::{abelianization, linear_characters, Abelianization, LinearChar};
pub use classes::{conjugacy_classes, ConjData};
pub use orbit::{char_orbit, char_orbits, orbit_count_p_dual, CharOrbit};

/// Default cap on enumerated group orders.
pub const DEFAULT_MAX_ORDER: u64 = 5000;

/// Groups up to this order cache their Cayley table on first use.
const TABLE_MAX_ORDER: usize = 2048;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// How coordinates multiply.
#[derive(Clone)]
pub enum GroupLaw {
    Algebra(Arc<Algebra>),
    /// Units of `Z/modulus`, one coordinate per element.
    ResidueUnits {
        modulus: u32,
    },
}

impl GroupLaw {
    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        match self {
            GroupLaw::Algebra(alg) => alg.mul(a, b),
            GroupLaw::ResidueUnits { modulus } => vec![((a[0] as u64 * b[0] as u64) % *modulus as u64) as u32],
        }
    }

    fn inverse(&self, a: &[u32]) -> Option<Vec<u32>> {
        match self {
            GroupLaw::Algebra(alg) => alg.inverse(a),
            GroupLaw::ResidueUnits { modulus } => {
                let m = *modulus as u64;
                (1..m.max(2))
                    .find(|&y| (a[0] as u64 * y) % m == 1 % m)
                    .map(|y| vec![(y % m) as u32])
            }
        }
    }

    fn same(&self, other: &GroupLaw) -> bool {
        match (self, other) {
            (GroupLaw::Algebra(a), GroupLaw::Algebra(b)) => Arc::ptr_eq(a, b) || a == b,
            (GroupLaw::ResidueUnits { modulus: a }, GroupLaw::ResidueUnits { modulus: b }) => a == b,
            _ => false,
        }
    }

    pub fn algebra(&self) -> Option<&Arc<Algebra>> {
        match self {
            GroupLaw::Algebra(a) => Some(a),
            GroupLaw::ResidueUnits { .. } => None,
        }
    }
}

/// What a group was built as.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    UnitGroup,
    IdealSubgroup,
    Diagonal,
    Subgroup(String),
    ResidueUnits,
}

/// A finite group stored as an enumerated list of coordinate vectors.
///
/// Element 0 is the identity; the rest are in lexicographic order of
/// coordinates, so ids are deterministic.
pub struct FiniteGroup {
    uid: u64,
    law: GroupLaw,
    kind: GroupKind,
    max_order: u64,
    width: usize,
    elems: Vec<u32>,
    index: HashMap<Box<[u32]>, u32>,
    inverses: Vec<u32>,
    table: OnceLock<Vec<u32>>,
    gens: OnceLock<Vec<usize>>,
    pub(crate) conj: OnceLock<Arc<ConjData>>,
    pub(crate) char_table: OnceLock<Arc<crate::character::CharTable>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("uid", &self.uid)
            .field("kind", &self.kind)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from its full element list. Closure is the caller's
    /// responsibility; inverses are checked to lie in the set.
    pub fn from_elements(
        law: GroupLaw,
        kind: GroupKind,
        identity: Vec<u32>,
        mut elements: Vec<Vec<u32>>,
        max_order: u64,
    ) -> Result<Self> {
        if elements.len() as u64 > max_order {
            return Err(Error::TooLarge {
                what: "group order",
                size: elements.len() as u64,
                cap: max_order,
            });
        }
        elements.sort_unstable();
        elements.dedup();
        let pos = elements.binary_search(&identity).map_err(|_| Error::NotSubgroup)?;
        let id = elements.remove(pos);
        elements.insert(0, id);
        let width = identity.len();
        let mut index = HashMap::with_capacity(elements.len());
        let mut flat = Vec::with_capacity(elements.len() * width);
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.clone().into_boxed_slice(), i as u32);
            flat.extend_from_slice(e);
        }
        let mut inverses = Vec::with_capacity(elements.len());
        for e in &elements {
            let inv = law.inverse(e).ok_or(Error::NotSubgroup)?;
            inverses.push(*index.get(inv.as_slice()).ok_or(Error::NotSubgroup)?);
        }
        Ok(Self {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            law,
            kind,
            max_order,
            width,
            elems: flat,
            index,
            inverses,
            table: OnceLock::new(),
            gens: OnceLock::new(),
            conj: OnceLock::new(),
            char_table: OnceLock::new(),
        })
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn law(&self) -> &GroupLaw {
        &self.law
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn max_order(&self) -> u64 {
        self.max_order
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, id: usize) -> &[u32] {
        &self.elems[id * self.width..(id + 1) * self.width]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.elems.chunks(self.width.max(1)).take(self.order())
    }

    pub fn id_of(&self, coords: &[u32]) -> Option<usize> {
        self.index.get(coords).map(|&i| i as usize)
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        self.index.contains_key(coords)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.order();
        if n <= TABLE_MAX_ORDER {
            let t = self.table.get_or_init(|| self.build_table());
            return t[a * n + b] as usize;
        }
        self.mul_uncached(a, b)
    }

    fn mul_uncached(&self, a: usize, b: usize) -> usize {
        let c = self.law.mul(self.element(a), self.element(b));
        self.id_of(&c).expect("group is closed under multiplication")
    }

    fn build_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(self.mul_uncached(a, b) as u32);
            }
        }
        t
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let gi_hi = self.mul(self.inv(g), self.inv(h));
        self.mul(self.mul(gi_hi, g), h)
    }

    pub fn pow(&self, g: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        use num::Integer;
        (0..self.order()).fold(1u64, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: repeatedly add the least element not yet generated.
    pub fn generators(&self) -> &[usize] {
        self.gens.get_or_init(|| {
            let n = self.order();
            let mut inside = vec![false; n];
            inside[0] = true;
            let mut members = vec![0usize];
            let mut gens = Vec::new();
            while members.len() < n {
                let g = (0..n).find(|&x| !inside[x]).expect("some element outside");
                gens.push(g);
                // extend the closure by the new generator
                let mut queue: VecDeque<usize> = members.iter().copied().collect();
                while let Some(x) = queue.pop_front() {
                    for &s in &gens {
                        let y = self.mul(x, s);
                        if !inside[y] {
                            inside[y] = true;
                            members.push(y);
                            queue.push_back(y);
                        }
                    }
                }
            }
            gens
        })
    }

    /// Closure of `ids` under multiplication, as element ids in increasing order.
    pub fn closure_ids(&self, ids: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in ids {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..n).filter(|&x| inside[x]).collect()
    }

    /// Subgroup on the given ids (assumed closed).
    pub fn subgroup_from_ids(&self, ids: &[usize], kind: GroupKind) -> Result<FiniteGroup> {
        let elems = ids.iter().map(|&i| self.element(i).to_vec()).collect();
        FiniteGroup::from_elements(self.law.clone(), kind, self.element(0).to_vec(), elems, self.max_order)
    }

    pub fn subgroup_generated(&self, gens: &[usize], kind: GroupKind) -> Result<FiniteGroup> {
        self.subgroup_from_ids(&self.closure_ids(gens), kind)
    }

    /// Elements of the group lying in `space`; for unit groups of algebras
    /// this is the unit group of a subalgebra.
    pub fn units_in(&self, space: &Subspace, kind: GroupKind) -> Result<FiniteGroup> {
        let ids: Vec<usize> = (0..self.order()).filter(|&g| space.contains(self.element(g))).collect();
        self.subgroup_from_ids(&ids, kind)
    }

    /// Every element of `self` lies in `other`, under the same law.
    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.law.same(&other.law) && self.width == other.width && self.elements().all(|e| other.contains(e))
    }

    /// Ids in `other` of this group's elements.
    pub fn embedding_into(&self, other: &FiniteGroup) -> Result<Vec<usize>> {
        if !self.law.same(&other.law) || self.width != other.width {
            return Err(Error::NotSubgroup);
        }
        self.elements()
            .map(|e| other.id_of(e).ok_or(Error::NotSubgroup))
            .collect()
    }

    /// Normal in `other`: closed under conjugation by generators of `other`.
    pub fn is_normal_in(&self, other: &FiniteGroup) -> bool {
        let Ok(emb) = self.embedding_into(other) else {
            return false;
        };
        let mine: std::collections::HashSet<usize> = emb.iter().copied().collect();
        other.generators().iter().all(|&g| {
            self.generators()
                .iter()
                .all(|&x| mine.contains(&other.conjugate(g, emb[x])))
        })
    }

    pub fn same_elements(&self, other: &FiniteGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }
}

/// `A^x`, enumerated as `sum a_i e_i + j` with all `a_i` nonzero and `j` in
/// the radical.
pub fn unit_group(alg: &Arc<Algebra>, max_order: u64) -> Result<FiniteGroup> {
    let dec = basic_decomposition(alg)?;
    unit_group_from(alg, &dec, max_order)
}

pub fn unit_group_from(alg: &Arc<Algebra>, dec: &BasicDecomposition, max_order: u64) -> Result<FiniteGroup> {
    let p = alg.p() as u64;
    let n = dec.rank();
    let jd = dec.radical.dim();
    let order = (p - 1)
        .saturating_pow(n as u32)
        .saturating_mul(p.saturating_pow(jd as u32));
    if order > max_order {
        return Err(Error::TooLarge {
            what: "unit group order",
            size: order,
            cap: max_order,
        });
    }
    let diag: Vec<Vec<u32>> = crate::algebra::all_vectors(alg.p(), n)
        .filter(|c| c.iter().all(|&x| x != 0))
        .map(|c| combine(alg, &dec.idempotents, &c))
        .collect();
    let rad: Vec<Vec<u32>> = dec.radical.space().elements().collect();
    let mut elems = Vec::with_capacity(order as usize);
    for d in &diag {
        for j in &rad {
            let g = alg.add(d, j);
            debug_assert!(alg.is_unit(&g));
            elems.push(g);
        }
    }
    FiniteGroup::from_elements(
        GroupLaw::Algebra(alg.clone()),
        GroupKind::UnitGroup,
        alg.one().to_vec(),
        elems,
        max_order,
    )
}

/// The diagonal subgroup `T`.
pub fn diagonal_subgroup(alg: &Arc<Algebra>, dec: &BasicDecomposition, max_order: u64) -> Result<FiniteGroup> {
    let elems = crate::algebra::all_vectors(alg.p(), dec.rank())
        .filter(|c| c.iter().all(|&x| x != 0))
        .map(|c| combine(alg, &dec.idempotents, &c))
        .collect();
    FiniteGroup::from_elements(
        GroupLaw::Algebra(alg.clone()),
        GroupKind::Diagonal,
        alg.one().to_vec(),
        elems,
        max_order,
    )
}

/// `1 + I` for an ideal inside the radical.
pub fn ideal_subgroup(alg: &Arc<Algebra>, radical: &Ideal, ideal: &Subspace, max_order: u64) -> Result<FiniteGroup> {
    if !ideal.is_subspace_of(radical.space()) {
        return Err(Error::NotInsideRadical);
    }
    crate::algebra::checked_power(alg.p(), ideal.dim(), "ideal subgroup")?;
    let elems = ideal.elements().map(|x| alg.add(alg.one(), &x)).collect();
    FiniteGroup::from_elements(
        GroupLaw::Algebra(alg.clone()),
        GroupKind::IdealSubgroup,
        alg.one().to_vec(),
        elems,
        max_order,
    )
}

/// `(Z/modulus)^x`.
pub fn residue_units(modulus: u32) -> Result<FiniteGroup> {
    if modulus == 0 {
        return Err(Error::PreconditionFailure("modulus must be positive".into()));
    }
    use num::Integer;
    let elems: Vec<Vec<u32>> = (0..modulus.max(1))
        .filter(|&x| x.gcd(&modulus) == 1 || modulus == 1)
        .map(|x| vec![x])
        .collect();
    let identity = vec![1 % modulus];
    FiniteGroup::from_elements(
        GroupLaw::ResidueUnits { modulus },
        GroupKind::ResidueUnits,
        identity,
        elems,
        u64::MAX,
    )
}

fn combine(alg: &Algebra, basis: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    basis
        .iter()
        .zip(coeffs)
        .fold(alg.zero(), |acc, (b, &c)| alg.add(&acc, &alg.scale(c, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{radical, radical_power, AlgebraSpec};

    pub(crate) fn borel(n: usize, p: u32) -> Arc<Algebra> {
        Arc::new(AlgebraSpec::borel(n, p).build().unwrap())
    }

    #[test]
    fn unit_group_orders() {
        assert_eq!(unit_group(&borel(2, 3), DEFAULT_MAX_ORDER).unwrap().order(), 12);
        assert_eq!(unit_group(&borel(3, 2), DEFAULT_MAX_ORDER).unwrap().order(), 8);
        let k = Arc::new(Algebra::new(5, vec![vec![vec![1]]], vec![1], None).unwrap());
        assert_eq!(unit_group(&k, DEFAULT_MAX_ORDER).unwrap().order(), 4);
        assert!(matches!(
            unit_group(&borel(3, 5), DEFAULT_MAX_ORDER),
            Err(Error::TooLarge { size: 8000, .. })
        ));
    }

    #[test]
    fn unit_group_matches_invertibility_scan() {
        for (n, p) in [(2, 2), (2, 3), (3, 2)] {
            let a = borel(n, p);
            let g = unit_group(&a, DEFAULT_MAX_ORDER).unwrap();
            let scan = crate::algebra::all_vectors(p, a.dim())
                .filter(|v| a.inverse(v).is_some())
                .count();
            assert_eq!(g.order(), scan);
            assert_eq!(g.element(0), a.one());
        }
    }

    #[test]
    fn ideal_subgroups() {
        let a = borel(2, 3);
        let j = radical(&a).unwrap();
        assert_eq!(ideal_subgroup(&a, &j, j.space(), DEFAULT_MAX_ORDER).unwrap().order(), 3);
        let zero = Subspace::zero(a.field(), a.dim());
        assert_eq!(ideal_subgroup(&a, &j, &zero, DEFAULT_MAX_ORDER).unwrap().order(), 1);
        let not_rad = Subspace::of(&a, &[a.basis(0)]);
        assert_eq!(
            ideal_subgroup(&a, &j, &not_rad, DEFAULT_MAX_ORDER).unwrap_err(),
            Error::NotInsideRadical
        );

        let b = borel(3, 2);
        let j = radical(&b).unwrap();
        let j2 = radical_power(&b, &j, 2).unwrap();
        let n = ideal_subgroup(&b, &j, j2.space(), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(n.order(), 2);
        let g = unit_group(&b, DEFAULT_MAX_ORDER).unwrap();
        assert!(n.is_normal_in(&g));
    }

    #[test]
    fn semidirect_factorization() {
        let a = borel(2, 5);
        let dec = basic_decomposition(&a).unwrap();
        let g = unit_group_from(&a, &dec, DEFAULT_MAX_ORDER).unwrap();
        let t = diagonal_subgroup(&a, &dec, DEFAULT_MAX_ORDER).unwrap();
        let p = ideal_subgroup(&a, &dec.radical, dec.radical.space(), DEFAULT_MAX_ORDER).unwrap();
        let mut seen = std::collections::HashSet::new();
        for tt in t.elements() {
            for x in p.elements() {
                assert!(seen.insert(a.mul(tt, x)));
            }
        }
        assert_eq!(seen.len(), g.order());
        assert!(p.is_normal_in(&g));
    }

    #[test]
    fn residue_unit_groups() {
        assert_eq!(residue_units(8).unwrap().order(), 4);
        assert_eq!(residue_units(9).unwrap().order(), 6);
        assert_eq!(residue_units(9).unwrap().exponent(), 6);
        assert_eq!(residue_units(8).unwrap().exponent(), 2);
    }

    #[test]
    fn group_basics() {
        let g = unit_group(&borel(2, 3), DEFAULT_MAX_ORDER).unwrap();
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(0, a), a);
        }
        assert_eq!(g.closure_ids(g.generators()).len(), n);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }
}
