//! Finite-dimensional unital associative algebras over `F_p`, given by
//! structure constants, together with their subspaces, ideals, subalgebras
//! and the radical/idempotent structure of split basic algebras.

mod spec;
mod structure;
mod subalgebras;
mod subspace;

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_math::{Matrix, PrimeField};

pub use spec::{AlgebraSpec, PatternSpec};
pub use structure::{
    basic_decomposition, bimodule_complement, bimodule_decompose, is_split_basic, one_dimensional_refinement, radical,
    radical_power, BasicDecomposition, BimoduleComponent, SplitBasicCertificate,
};
pub use subalgebras::{enumerate_subalgebras, SubalgebraBounds};
pub use subspace::{render_vector, Ideal, Subalgebra, Subspace};

/// Exhaustive element scans are refused beyond this many elements.
pub const ELEMENT_SCAN_CAP: u64 = 1 << 22;

/// Structure-constant presentation: `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: PrimeField,
    dim: usize,
    sc: Vec<u32>,
    sparse: Vec<Vec<(usize, u32)>>,
    one: Vec<u32>,
    labels: Vec<String>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.field.p())
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .finish()
    }
}

impl Algebra {
    /// Builds and certifies an algebra: associativity on all basis triples and
    /// a two-sided identity. The zero-dimensional algebra is rejected.
    pub fn new(p: u32, sc: Vec<Vec<Vec<u32>>>, one: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        let field = PrimeField::supported(p)?;
        let dim = sc.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("zero-dimensional algebra has no identity".into()));
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in &sc {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                flat.extend(v.iter().map(|&c| c % p));
            }
        }
        if one.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: one.len(),
            });
        }
        let labels = match labels {
            Some(l) if l.len() == dim => l,
            Some(l) => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: l.len(),
                })
            }
            None => (0..dim).map(|i| format!("b{i}")).collect(),
        };
        let one = one.into_iter().map(|c| c % p).collect();
        let alg = Self::from_flat(field, dim, flat, one, labels);
        alg.certify()?;
        Ok(alg)
    }

    pub(crate) fn from_flat(field: PrimeField, dim: usize, sc: Vec<u32>, one: Vec<u32>, labels: Vec<String>) -> Self {
        let mut sparse = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let c = sc[(i * dim + j) * dim + k];
                    if c != 0 {
                        sparse[i * dim + j].push((k, c));
                    }
                }
            }
        }
        Self {
            field,
            dim,
            sc,
            sparse,
            one,
            labels,
        }
    }

    fn certify(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let bij = self.basis_product(i, j);
                for k in 0..n {
                    let lhs = self.mul(&bij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.basis_product(j, k));
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            let b = self.basis(i);
            if self.mul(&self.one, &b) != b || self.mul(&b, &self.one) != b {
                return Err(Error::InvalidAlgebra(format!(
                    "given identity is not a two-sided identity on basis element {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[u32] {
        &self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Structure constant `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.sc[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j)).collect())
            .collect()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    fn basis_product(&self, i: usize, j: usize) -> Vec<u32> {
        let start = (i * self.dim + j) * self.dim;
        self.sc[start..start + self.dim].to_vec()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.dim;
        let p = self.field.p() as u64;
        let mut acc = vec![0u64; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let ab = ai as u64 * bj as u64;
                for &(k, c) in &self.sparse[i * n + j] {
                    acc[k] += ab * c as u64;
                }
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, s: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.field.mul(s, x)).collect()
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = self.one.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Nilpotency by repeated squaring: `a` is nilpotent iff `a^(2^k) = 0`
    /// for the least `k` with `2^k >= dim`.
    pub fn is_nilpotent(&self, a: &[u32]) -> bool {
        let mut x = a.to_vec();
        let mut reach = 1usize;
        loop {
            if x.iter().all(|&c| c == 0) {
                return true;
            }
            if reach >= self.dim {
                return false;
            }
            x = self.mul(&x, &x);
            reach *= 2;
        }
    }

    /// Matrix of `x -> a x` in the standard basis (columns are `a b_j`).
    pub fn left_mul_matrix(&self, a: &[u32]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n, n);
        for j in 0..n {
            let col = self.mul(a, &self.basis(j));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Two-sided inverse, if `a` is a unit.
    pub fn inverse(&self, a: &[u32]) -> Option<Vec<u32>> {
        let x = self.left_mul_matrix(a).solve(&self.one)?;
        // In a finite-dimensional algebra a right inverse is two-sided.
        debug_assert_eq!(self.mul(&x, a), self.one);
        Some(x)
    }

    pub fn is_unit(&self, a: &[u32]) -> bool {
        self.left_mul_matrix(a).rank() == self.dim
    }

    pub fn element<'a>(&'a self, coords: Vec<u32>) -> Result<AlgElem<'a>> {
        AlgElem::new(self, coords)
    }

    /// Number of elements, refusing sizes beyond [`ELEMENT_SCAN_CAP`].
    pub(crate) fn checked_size(&self, what: &'static str) -> Result<u64> {
        checked_power(self.p(), self.dim, what)
    }
}

pub(crate) fn checked_power(p: u32, n: usize, what: &'static str) -> Result<u64> {
    let mut size: u64 = 1;
    for _ in 0..n {
        size = size.saturating_mul(p as u64);
        if size > ELEMENT_SCAN_CAP {
            return Err(Error::TooLarge {
                what,
                size,
                cap: ELEMENT_SCAN_CAP,
            });
        }
    }
    Ok(size)
}

/// All vectors of `F_p^n` in lexicographic order.
pub fn all_vectors(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

/// All tuples with `t[i] < radix[i]`, in lexicographic order.
pub fn all_vectors_mixed(radix: &[u64]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let total: u64 = radix.iter().product();
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; radix.len()];
        for (slot, &r) in v.iter_mut().zip(radix).rev() {
            *slot = (idx % r) as u32;
            idx /= r;
        }
        v
    })
}

/// An element of an algebra together with its owner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElem<'a> {
    owner: &'a Algebra,
    coords: Vec<u32>,
}

impl<'a> AlgElem<'a> {
    pub fn new(owner: &'a Algebra, coords: Vec<u32>) -> Result<Self> {
        if coords.len() != owner.dim() {
            return Err(Error::DimensionMismatch {
                expected: owner.dim(),
                found: coords.len(),
            });
        }
        let coords = coords.into_iter().map(|c| c % owner.p()).collect();
        Ok(Self { owner, coords })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn owner(&self) -> &'a Algebra {
        self.owner
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            owner: self.owner,
            coords: self.owner.add(&self.coords, &other.coords),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            owner: self.owner,
            coords: self.owner.mul(&self.coords, &other.coords),
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.owner.is_nilpotent(&self.coords)
    }

    pub fn inverse(&self) -> Option<Self> {
        self.owner.inverse(&self.coords).map(|coords| Self {
            owner: self.owner,
            coords,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn borel(n: usize, p: u32) -> Algebra {
        AlgebraSpec::borel(n, p).build().unwrap()
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(matches!(
            Algebra::new(2, vec![], vec![], None),
            Err(Error::InvalidAlgebra(_))
        ));
        // b0 b0 = b1, b1 b0 = b0: not associative and no identity.
        let sc = vec![vec![vec![0, 1], vec![0, 0]], vec![vec![1, 0], vec![0, 0]]];
        assert!(Algebra::new(3, sc, vec![1, 0], None).is_err());
        // Correct constants, wrong identity.
        let sc = vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]];
        assert!(Algebra::new(3, sc.clone(), vec![1, 0], None).is_err());
        assert!(Algebra::new(3, sc, vec![1, 1], None).is_ok());
        assert!(matches!(
            Algebra::new(4, vec![vec![vec![1]]], vec![1], None),
            Err(Error::UnsupportedModulus(4))
        ));
    }

    #[test]
    fn nilpotency_and_inverses() {
        let a = borel(3, 3);
        // basis order: e11 e12 e13 e22 e23 e33
        let e12 = a.basis(1);
        let e23 = a.basis(4);
        assert_eq!(a.mul(&e12, &e23), a.basis(2));
        assert!(a.is_nilpotent(&a.add(&e12, &e23)));
        assert!(!a.is_nilpotent(a.one()));
        let x = a.add(a.one(), &e12);
        let inv = a.inverse(&x).unwrap();
        assert_eq!(a.mul(&x, &inv), a.one());
        assert!(a.inverse(&a.basis(0)).is_none());
        assert!(!a.is_unit(&e12));
    }

    #[test]
    fn vectors_enumerate_lexicographically() {
        let v: Vec<_> = all_vectors(2, 2).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(all_vectors(3, 3).count(), 27);
    }
}
