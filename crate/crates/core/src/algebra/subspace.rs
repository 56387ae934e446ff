use std::cmp::Ordering;

use serde::Serialize;

use super::Algebra;
use crate::error::{Error, Result};
use crate::exact_math::{solve_echelon, Matrix, PrimeField};

/// A coordinate subspace of `F_p^n`, stored as the nonzero rows of its
/// reduced row echelon form. Equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vectors).expect("vectors have ambient length");
        let ech = solve_echelon(&m);
        Self {
            field,
            ambient,
            rows: ech.row_space.to_rows(),
            pivots: ech.pivots,
        }
    }

    pub fn of(alg: &Algebra, vectors: &[Vec<u32>]) -> Self {
        Self::span(alg.field(), alg.dim(), vectors)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Echelon basis rows.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn size(&self) -> u64 {
        (self.field.p() as u64).pow(self.dim() as u32)
    }

    /// Echelon residual of `v`; zero iff `v` lies in the subspace.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                for (x, &y) in r.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residual(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coeffs: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let recon = self.combine(&coeffs);
        (recon == v).then_some(coeffs)
    }

    /// `sum_i coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.ambient];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Self::span(self.field, self.ambient, &all)
    }

    pub fn with_vector(&self, v: &[u32]) -> Subspace {
        let mut all = self.rows.clone();
        all.push(v.to_vec());
        Self::span(self.field, self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field, self.ambient);
        }
        let f = self.field;
        let (du, dw) = (self.dim(), other.dim());
        // Columns are u_1..u_du, -w_1..-w_dw; kernel vectors give common elements.
        let mut m = Matrix::zeros(f, self.ambient, du + dw);
        for (c, u) in self.rows.iter().enumerate() {
            for (r, &x) in u.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        for (c, w) in other.rows.iter().enumerate() {
            for (r, &x) in w.iter().enumerate() {
                m.set(r, du + c, f.neg(x));
            }
        }
        let ker = solve_echelon(&m).kernel;
        let vecs: Vec<Vec<u32>> = (0..ker.rows()).map(|k| self.combine(&ker.row(k)[..du])).collect();
        Self::span(f, self.ambient, &vecs)
    }

    /// Standard unit vectors completing the echelon basis to the whole space.
    pub fn complement_units(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// All elements, in lexicographic order of their coordinate tuples.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        super::all_vectors(self.field.p(), self.dim()).map(move |c| self.combine(&c))
    }

    /// Image of the subspace under `x -> a x b`.
    pub fn sandwich(&self, alg: &Algebra, a: &[u32], b: &[u32]) -> Subspace {
        let vecs: Vec<Vec<u32>> = self.rows.iter().map(|r| alg.mul(&alg.mul(a, r), b)).collect();
        Self::span(self.field, self.ambient, &vecs)
    }

    /// `span { u w : u in self, w in other }`.
    pub fn product(&self, alg: &Algebra, other: &Subspace) -> Subspace {
        let mut vecs = Vec::with_capacity(self.dim() * other.dim());
        for u in &self.rows {
            for w in &other.rows {
                vecs.push(alg.mul(u, w));
            }
        }
        Self::span(self.field, self.ambient, &vecs)
    }

    pub fn is_mult_closed(&self, alg: &Algebra) -> bool {
        self.rows
            .iter()
            .all(|u| self.rows.iter().all(|w| self.contains(&alg.mul(u, w))))
    }

    pub fn is_left_closed(&self, alg: &Algebra) -> bool {
        (0..alg.dim()).all(|i| self.rows.iter().all(|w| self.contains(&alg.mul(&alg.basis(i), w))))
    }

    pub fn is_right_closed(&self, alg: &Algebra) -> bool {
        (0..alg.dim()).all(|i| self.rows.iter().all(|w| self.contains(&alg.mul(w, &alg.basis(i)))))
    }

    pub(crate) fn check_owner(&self, alg: &Algebra) -> Result<()> {
        if self.ambient != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: self.ambient,
            });
        }
        if self.field != alg.field() {
            return Err(Error::FieldMismatch {
                left: alg.p(),
                right: self.field.p(),
            });
        }
        Ok(())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dimension first, then lexicographic echelon basis.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| self.rows.cmp(&other.rows))
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// A certified unital subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subalgebra {
    space: Subspace,
    contains_one: bool,
    mult_closed: bool,
}

impl Subalgebra {
    pub fn certify(alg: &Algebra, space: Subspace) -> Result<Self> {
        space.check_owner(alg)?;
        if !space.contains(alg.one()) {
            return Err(Error::CertificationFailure(
                "subspace does not contain the identity".into(),
            ));
        }
        if !space.is_mult_closed(alg) {
            return Err(Error::CertificationFailure(
                "subspace is not closed under multiplication".into(),
            ));
        }
        Ok(Self {
            space,
            contains_one: true,
            mult_closed: true,
        })
    }

    pub fn whole(alg: &Algebra) -> Self {
        Self {
            space: Subspace::full(alg.field(), alg.dim()),
            contains_one: true,
            mult_closed: true,
        }
    }

    /// Smallest subalgebra containing `gens`.
    pub fn generated_by(alg: &Algebra, gens: &[Vec<u32>]) -> Self {
        let mut vecs = vec![alg.one().to_vec()];
        vecs.extend(gens.iter().cloned());
        let space = close_under_products(alg, Subspace::of(alg, &vecs));
        Self {
            space,
            contains_one: true,
            mult_closed: true,
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    pub fn mult_closed(&self) -> bool {
        self.mult_closed
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.space.contains(v)
    }

    /// The subalgebra as a standalone algebra on its echelon basis.
    pub fn to_algebra(&self, alg: &Algebra) -> Algebra {
        let rows = self.space.basis();
        let d = rows.len();
        let mut sc = Vec::with_capacity(d * d * d);
        for u in rows {
            for w in rows {
                let c = self
                    .space
                    .coordinates(&alg.mul(u, w))
                    .expect("certified subalgebra is closed");
                sc.extend(c);
            }
        }
        let one = self
            .space
            .coordinates(alg.one())
            .expect("certified subalgebra is unital");
        let labels = rows.iter().map(|r| render_vector(alg, r)).collect();
        Algebra::from_flat(alg.field(), d, sc, one, labels)
    }

    /// Embedding of local coordinates into the ambient algebra.
    pub fn embed(&self, local: &[u32]) -> Vec<u32> {
        self.space.combine(local)
    }

    /// Local coordinates of an ambient vector lying in the subalgebra.
    pub fn restrict(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.space.coordinates(v)
    }
}

/// Smallest multiplicatively closed subspace containing `s`.
pub(crate) fn close_under_products(alg: &Algebra, mut s: Subspace) -> Subspace {
    loop {
        let mut grown = s.clone();
        for u in s.basis() {
            for w in s.basis() {
                let uw = alg.mul(u, w);
                if !grown.contains(&uw) {
                    grown = grown.with_vector(&uw);
                }
            }
        }
        if grown.dim() == s.dim() {
            return s;
        }
        s = grown;
    }
}

/// A certified two-sided ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    space: Subspace,
    left_closed: bool,
    right_closed: bool,
}

impl Ideal {
    pub fn certify(alg: &Algebra, space: Subspace) -> Result<Self> {
        space.check_owner(alg)?;
        if !space.is_left_closed(alg) || !space.is_right_closed(alg) {
            return Err(Error::CertificationFailure("subspace is not a two-sided ideal".into()));
        }
        Ok(Self {
            space,
            left_closed: true,
            right_closed: true,
        })
    }

    pub fn is_ideal(alg: &Algebra, space: &Subspace) -> bool {
        space.is_left_closed(alg) && space.is_right_closed(alg)
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn left_closed(&self) -> bool {
        self.left_closed
    }

    pub fn right_closed(&self) -> bool {
        self.right_closed
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.space.contains(v)
    }
}

/// Human-readable rendering using the algebra's basis labels.
pub fn render_vector(alg: &Algebra, v: &[u32]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                alg.labels()[i].clone()
            } else {
                format!("{c}*{}", alg.labels()[i])
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
