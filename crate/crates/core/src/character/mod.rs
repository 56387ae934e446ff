//! Exact character tables, induction and restriction, inner products and
//! the Clifford correspondence.

mod clifford;
mod dixon;
mod ops;

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_math::Cyclotomic;
use crate::group::{conjugacy_classes, ConjData, FiniteGroup, LinearChar};

pub use clifford::{clifford_correspondent, CliffordData};
pub(crate) use ops::induce_linear_with;
pub use ops::{induce, induce_linear, inner_product, linear_pairing, multiplicity, restrict};

/// A class function with cyclotomic values, one per conjugacy class.
#[derive(Clone)]
pub struct Character {
    group_uid: u64,
    classes: Arc<ConjData>,
    values: Vec<Cyclotomic>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.debug_struct("Character")
            .field("group_uid", &self.group_uid)
            .field("values", &vals)
            .finish()
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.group_uid == other.group_uid && self.values == other.values
    }
}

impl Eq for Character {}

impl Character {
    pub fn new(g: &FiniteGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        let classes = conjugacy_classes(g)?;
        if values.len() != classes.count() {
            return Err(Error::DimensionMismatch {
                expected: classes.count(),
                found: values.len(),
            });
        }
        Ok(Self {
            group_uid: g.uid(),
            classes,
            values,
        })
    }

    pub(crate) fn from_parts(group_uid: u64, classes: Arc<ConjData>, values: Vec<Cyclotomic>) -> Self {
        Self {
            group_uid,
            classes,
            values,
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Result<Self> {
        let classes = conjugacy_classes(g)?;
        let values = vec![Cyclotomic::one(1); classes.count()];
        Ok(Self::from_parts(g.uid(), classes, values))
    }

    /// Character of the regular representation.
    pub fn regular(g: &FiniteGroup) -> Result<Self> {
        let classes = conjugacy_classes(g)?;
        let mut values = vec![Cyclotomic::zero(1); classes.count()];
        values[0] = Cyclotomic::from_int(1, g.order() as i64);
        Ok(Self::from_parts(g.uid(), classes, values))
    }

    pub fn from_linear(g: &FiniteGroup, lambda: &LinearChar) -> Result<Self> {
        lambda.check_group(g)?;
        let classes = conjugacy_classes(g)?;
        let values = classes.reps.iter().map(|&r| lambda.value(r)).collect();
        Ok(Self::from_parts(g.uid(), classes, values))
    }

    pub fn group_uid(&self) -> u64 {
        self.group_uid
    }

    pub fn classes(&self) -> &Arc<ConjData> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at an element id.
    pub fn at(&self, element: usize) -> &Cyclotomic {
        &self.values[self.classes.class_of[element]]
    }

    /// `chi(1)` as an integer; `None` when it is not a rational integer.
    pub fn degree(&self) -> Option<i64> {
        let q = self.values[0].as_rational()?;
        if !q.is_integer() {
            return None;
        }
        q.to_integer().to_i64()
    }

    pub fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if self.group_uid != g.uid() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group_uid != other.group_uid {
            return Err(Error::GroupMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Ok(Self::from_parts(self.group_uid, self.classes.clone(), values))
    }

    pub fn scale(&self, k: i64) -> Self {
        let q = BigRational::from_integer(BigInt::from(k));
        let values = self.values.iter().map(|v| v.scale(&q)).collect();
        Self::from_parts(self.group_uid, self.classes.clone(), values)
    }

    pub fn conj(&self) -> Self {
        let values = self.values.iter().map(Cyclotomic::conj).collect();
        Self::from_parts(self.group_uid, self.classes.clone(), values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// All values equal to 1.
    pub fn is_trivial(&self) -> bool {
        let one = Cyclotomic::one(1);
        self.values.iter().all(|v| *v == one)
    }

    /// Values re-expressed at a common conductor.
    pub fn values_at_conductor(&self, m: u32) -> Result<Vec<Cyclotomic>> {
        self.values.iter().map(|v| v.embed(m)).collect()
    }
}

/// Irreducible characters of a group, ordered by degree, trivial first,
/// then lexicographically descending on values.
#[derive(Debug, Clone)]
pub struct CharTable {
    group_uid: u64,
    classes: Arc<ConjData>,
    conductor: u32,
    auxiliary_prime: u32,
    irreducibles: Vec<Character>,
}

impl CharTable {
    pub fn group_uid(&self) -> u64 {
        self.group_uid
    }

    pub fn classes(&self) -> &Arc<ConjData> {
        &self.classes
    }

    /// Exponent of the group; all values lie in `Q(z_conductor)`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Prime used for the modular eigenvector computation.
    pub fn auxiliary_prime(&self) -> u32 {
        self.auxiliary_prime
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles.iter().map(|c| c.degree().unwrap_or(0)).collect()
    }

    /// Index of the irreducible equal to `chi`.
    pub fn position(&self, chi: &Character) -> Option<usize> {
        self.irreducibles.iter().position(|c| c == chi)
    }

    /// Both orthogonality relations and the degree equation, exactly.
    pub fn verify(&self) -> Result<()> {
        let n = self.classes.group_order as i64;
        let r = self.classes.count();
        if self.irreducibles.len() != r {
            return Err(Error::VerificationFailure(format!(
                "{} irreducibles for {r} classes",
                self.irreducibles.len()
            )));
        }
        let sq: i64 = self.degrees().iter().map(|d| d * d).sum();
        if sq != n {
            return Err(Error::VerificationFailure(format!(
                "sum of squared degrees {sq} != {n}"
            )));
        }
        let conj: Vec<Vec<Cyclotomic>> = self
            .irreducibles
            .iter()
            .map(|c| c.values.iter().map(Cyclotomic::conj).collect())
            .collect();
        for i in 0..r {
            for j in i..r {
                let mut acc = Cyclotomic::zero(self.conductor);
                for k in 0..r {
                    let term = self.irreducibles[i].values[k].mul(&conj[j][k]);
                    acc.add_assign(&term.scale(&BigRational::from_integer(BigInt::from(self.classes.sizes[k]))));
                }
                let expect = if i == j { n } else { 0 };
                if acc != Cyclotomic::from_int(1, expect) {
                    return Err(Error::VerificationFailure(format!(
                        "row orthogonality fails for ({i}, {j})"
                    )));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = Cyclotomic::zero(self.conductor);
                for i in 0..r {
                    acc.add_assign(&self.irreducibles[i].values[k].mul(&conj[i][l]));
                }
                let expect = if k == l {
                    BigRational::new(BigInt::from(n), BigInt::from(self.classes.sizes[k]))
                } else {
                    BigRational::zero()
                };
                if acc != Cyclotomic::from_rational(1, expect) {
                    return Err(Error::VerificationFailure(format!(
                        "column orthogonality fails for ({k}, {l})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Header and rows for CSV emission; values rendered at the table conductor.
    pub fn csv_records(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let mut header = vec![format!("conductor={}", self.conductor), "degree".to_string()];
        header.extend((0..self.classes.count()).map(|k| format!("c{k}")));
        let rows = self
            .irreducibles
            .iter()
            .enumerate()
            .map(|(i, chi)| {
                let mut row = vec![format!("chi{i}"), chi.degree().unwrap_or(0).to_string()];
                row.extend(
                    chi.values
                        .iter()
                        .map(|v| v.embed(self.conductor).map(|x| x.to_string()).unwrap_or_default()),
                );
                row
            })
            .collect();
        (header, rows)
    }
}

/// Cached exact character table; verified before being returned.
pub fn char_table(g: &FiniteGroup) -> Result<Arc<CharTable>> {
    if let Some(t) = g.char_table.get() {
        return Ok(t.clone());
    }
    let table = dixon::compute(g)?;
    table.verify().map_err(|e| Error::LiftFailure(e.to_string()))?;
    Ok(g.char_table.get_or_init(|| Arc::new(table)).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::group::{linear_characters, residue_units, unit_group, DEFAULT_MAX_ORDER};

    pub(crate) fn units(n: usize, p: u32) -> FiniteGroup {
        unit_group(&Arc::new(AlgebraSpec::borel(n, p).build().unwrap()), DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn borel_tables() {
        let g = units(2, 3);
        let t = char_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2, 2]);
        assert!(t.irreducibles()[0].is_trivial());
        let u = units(3, 2);
        assert_eq!(char_table(&u).unwrap().degrees(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn abelian_tables_match_linear_characters() {
        for m in [5u32, 8, 9, 15] {
            let g = residue_units(m).unwrap();
            let t = char_table(&g).unwrap();
            assert!(t.degrees().iter().all(|&d| d == 1));
            let lin = linear_characters(&g).unwrap();
            assert_eq!(lin.len(), t.len());
            for l in &lin {
                let chi = Character::from_linear(&g, l).unwrap();
                assert!(t.position(&chi).is_some());
            }
        }
    }

    #[test]
    fn larger_tables_verify() {
        for (n, p) in [(2, 5), (2, 7), (3, 3), (4, 2)] {
            let g = units(n, p);
            let t = char_table(&g).unwrap();
            let sq: i64 = t.degrees().iter().map(|d| d * d).sum();
            assert_eq!(sq as usize, g.order());
        }
    }

    #[test]
    fn csv_rendering() {
        let g = units(2, 3);
        let (header, rows) = char_table(&g).unwrap().csv_records();
        assert_eq!(header[0], "conductor=6");
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0][1], "1");
        assert!(rows[0][2..].iter().all(|v| v == "1"));
    }
}
