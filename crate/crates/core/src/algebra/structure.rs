use serde::Serialize;

use super::subspace::{Ideal, Subalgebra, Subspace};
use super::{all_vectors, checked_power, Algebra};
use crate::error::{Error, Result};

/// Orthogonal idempotents `e_1..e_n` with `A = D + J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicDecomposition {
    pub idempotents: Vec<Vec<u32>>,
    pub diagonal: Subalgebra,
    pub radical: Ideal,
}

impl BasicDecomposition {
    pub fn rank(&self) -> usize {
        self.idempotents.len()
    }
}

/// Result of [`is_split_basic`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitBasicCertificate {
    pub split_basic: bool,
    pub radical_dim: Option<usize>,
    pub idempotent_count: Option<usize>,
    pub reason: Option<String>,
}

/// `e_i V e_j` for one pair `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleComponent {
    pub left: usize,
    pub right: usize,
    pub space: Subspace,
}

/// The radical as the set of nilpotent elements. Certifies that this set is
/// a subspace and an ideal, and that the quotient is split commutative
/// semisimple.
pub fn radical(alg: &Algebra) -> Result<Ideal> {
    let (j, _) = radical_and_quotient_idempotents(alg)?;
    Ok(j)
}

fn nilpotent_subspace(alg: &Algebra) -> Result<Subspace> {
    let size = alg.checked_size("nilpotent scan")?;
    let mut nilpotents = Vec::new();
    for v in all_vectors(alg.p(), alg.dim()) {
        if alg.is_nilpotent(&v) {
            nilpotents.push(v);
        }
    }
    debug_assert!(size >= nilpotents.len() as u64);
    let span = Subspace::of(alg, &nilpotents);
    if span.size() != nilpotents.len() as u64 {
        return Err(Error::NotSplitBasic(format!(
            "the {} nilpotent elements do not form a subspace (their span has {} elements)",
            nilpotents.len(),
            span.size()
        )));
    }
    Ok(span)
}

/// Radical plus primitive idempotents of `A/J` given as reduced
/// representatives, sorted in descending lexicographic order.
fn radical_and_quotient_idempotents(alg: &Algebra) -> Result<(Ideal, Vec<Vec<u32>>)> {
    let span = nilpotent_subspace(alg)?;
    if !Ideal::is_ideal(alg, &span) {
        return Err(Error::NotSplitBasic(
            "the nilpotent elements do not form an ideal".into(),
        ));
    }
    let j = Ideal::certify(alg, span)?;
    let free = j.space().complement_units();
    let q = free.len();
    let reduce = |v: &[u32]| j.space().residual(v);
    let lift = |c: &[u32]| {
        let mut v = alg.zero();
        for (&col, &x) in free.iter().zip(c) {
            v[col] = x;
        }
        v
    };
    // Commutativity of A/J on basis representatives.
    for a in &free {
        for b in &free {
            let (ea, eb) = (alg.basis(*a), alg.basis(*b));
            let comm = alg.sub(&alg.mul(&ea, &eb), &alg.mul(&eb, &ea));
            if !j.contains(&comm) {
                return Err(Error::NotSplitBasic("semisimple quotient is not commutative".into()));
            }
        }
    }
    checked_power(alg.p(), q, "quotient idempotent scan")?;
    let idempotents: Vec<Vec<u32>> = all_vectors(alg.p(), q)
        .map(|c| lift(&c))
        .filter(|x| x.iter().any(|&c| c != 0) && reduce(&alg.mul(x, x)) == *x)
        .collect();
    // Primitive: no nonzero idempotent strictly below.
    let mut primitive: Vec<Vec<u32>> = idempotents
        .iter()
        .filter(|e| {
            !idempotents
                .iter()
                .any(|f| f != *e && reduce(&alg.mul(f, e)) == *f && reduce(&alg.mul(e, f)) == *f)
        })
        .cloned()
        .collect();
    if primitive.len() != q {
        return Err(Error::NotSplitBasic(format!(
            "quotient of dimension {q} has {} primitive idempotents",
            primitive.len()
        )));
    }
    for (a, e) in primitive.iter().enumerate() {
        for (b, f) in primitive.iter().enumerate() {
            if a != b && reduce(&alg.mul(e, f)).iter().any(|&c| c != 0) {
                return Err(Error::NotSplitBasic("primitive idempotents are not orthogonal".into()));
            }
        }
    }
    let total = primitive.iter().fold(alg.zero(), |acc, e| alg.add(&acc, e));
    if total != reduce(alg.one()) {
        return Err(Error::NotSplitBasic("primitive idempotents do not sum to 1".into()));
    }
    primitive.sort_by(|x, y| y.cmp(x));
    Ok((j, primitive))
}

/// Lifts the quotient idempotents to orthogonal idempotents of `A`.
pub fn basic_decomposition(alg: &Algebra) -> Result<BasicDecomposition> {
    let (j, reps) = radical_and_quotient_idempotents(alg)?;
    let n = reps.len();
    let mut lifted: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut acc = alg.zero();
    for rep in reps.iter().take(n.saturating_sub(1)) {
        let c = alg.sub(alg.one(), &acc);
        let mut x = alg.mul(&alg.mul(&c, rep), &c);
        // x <- 3x^2 - 2x^3 converges since x^2 - x is nilpotent.
        let mut steps = 0;
        loop {
            let x2 = alg.mul(&x, &x);
            if x2 == x {
                break;
            }
            let x3 = alg.mul(&x2, &x);
            x = alg.sub(&alg.scale(3 % alg.p(), &x2), &alg.scale(2 % alg.p(), &x3));
            steps += 1;
            if steps > 4 * alg.dim() + 8 {
                return Err(Error::NotSplitBasic("idempotent lifting did not converge".into()));
            }
        }
        acc = alg.add(&acc, &x);
        lifted.push(x);
    }
    lifted.push(alg.sub(alg.one(), &acc));

    for (a, e) in lifted.iter().enumerate() {
        for (b, f) in lifted.iter().enumerate() {
            let expect = if a == b { e.clone() } else { alg.zero() };
            if alg.mul(e, f) != expect {
                return Err(Error::NotSplitBasic("lifted idempotents are not orthogonal".into()));
            }
        }
        if !j.space().residual(e).eq(&j.space().residual(&reps[a])) {
            return Err(Error::NotSplitBasic(
                "lifted idempotent does not lift its residue".into(),
            ));
        }
    }
    let diag_space = Subspace::of(alg, &lifted);
    if diag_space.dim() != n || !diag_space.intersection(j.space()).is_zero() || diag_space.dim() + j.dim() != alg.dim()
    {
        return Err(Error::NotSplitBasic("A is not the direct sum of D and J".into()));
    }
    let diagonal = Subalgebra::certify(alg, diag_space)?;
    Ok(BasicDecomposition {
        idempotents: lifted,
        diagonal,
        radical: j,
    })
}

/// `J^n`, spanned by all n-fold products of radical elements.
pub fn radical_power(alg: &Algebra, j: &Ideal, n: usize) -> Result<Ideal> {
    if n == 0 {
        return Err(Error::PreconditionFailure(
            "radical power exponent must be at least 1".into(),
        ));
    }
    let mut cur = j.space().clone();
    for _ in 1..n {
        if cur.is_zero() {
            break;
        }
        cur = cur.product(alg, j.space());
    }
    Ideal::certify(alg, cur)
}

pub fn is_split_basic(alg: &Algebra) -> SplitBasicCertificate {
    match basic_decomposition(alg) {
        Ok(d) => SplitBasicCertificate {
            split_basic: true,
            radical_dim: Some(d.radical.dim()),
            idempotent_count: Some(d.rank()),
            reason: None,
        },
        Err(e) => SplitBasicCertificate {
            split_basic: false,
            radical_dim: None,
            idempotent_count: None,
            reason: Some(e.to_string()),
        },
    }
}

fn check_bimodule(alg: &Algebra, idempotents: &[Vec<u32>], v: &Subspace) -> Result<()> {
    for e in idempotents {
        for row in v.basis() {
            if !v.contains(&alg.mul(e, row)) || !v.contains(&alg.mul(row, e)) {
                return Err(Error::NotBimodule(
                    "not closed under multiplication by an idempotent".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Nonzero homogeneous components `e_i V e_j`, ordered by `(i, j)`.
pub fn bimodule_decompose(alg: &Algebra, dec: &BasicDecomposition, v: &Subspace) -> Result<Vec<BimoduleComponent>> {
    v.check_owner(alg)?;
    check_bimodule(alg, &dec.idempotents, v)?;
    let mut out = Vec::new();
    let mut total = 0;
    for (i, ei) in dec.idempotents.iter().enumerate() {
        for (k, ek) in dec.idempotents.iter().enumerate() {
            let space = v.sandwich(alg, ei, ek);
            if !space.is_zero() {
                total += space.dim();
                out.push(BimoduleComponent {
                    left: i,
                    right: k,
                    space,
                });
            }
        }
    }
    if total != v.dim() {
        return Err(Error::NotBimodule(
            "homogeneous components do not exhaust the subspace".into(),
        ));
    }
    Ok(out)
}

/// One-dimensional sub-bimodules: echelon basis rows of each component.
pub fn one_dimensional_refinement(components: &[BimoduleComponent]) -> Vec<(usize, usize, Vec<u32>)> {
    components
        .iter()
        .flat_map(|c| c.space.basis().iter().map(move |r| (c.left, c.right, r.clone())))
        .collect()
}

/// A sub-bimodule `V2` with `V = V1 + V2` direct. Built component by
/// component from echelon basis rows not already spanned.
pub fn bimodule_complement(alg: &Algebra, dec: &BasicDecomposition, v: &Subspace, v1: &Subspace) -> Result<Subspace> {
    if !v1.is_subspace_of(v) {
        return Err(Error::NotBimodule("V1 is not contained in V".into()));
    }
    check_bimodule(alg, &dec.idempotents, v1)?;
    let comps = bimodule_decompose(alg, dec, v)?;
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    for c in &comps {
        let ei = &dec.idempotents[c.left];
        let ej = &dec.idempotents[c.right];
        let mut acc = v1.sandwich(alg, ei, ej);
        for row in c.space.basis() {
            if !acc.contains(row) {
                acc = acc.with_vector(row);
                chosen.push(row.clone());
            }
        }
    }
    let v2 = Subspace::of(alg, &chosen);
    debug_assert!(v2.intersection(v1).is_zero() && v2.dim() + v1.dim() == v.dim());
    Ok(v2)
}
