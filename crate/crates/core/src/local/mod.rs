//! Finite models of smooth characters of the multiplicative group of a
//! non-archimedean local field with residue field `F_p`, and the shape
//! predicate on induction data.
//!
//! A character of `K^x = O^x x <w>` trivial on `1 + p^k` is stored as a
//! character of `(Z/p^k)^x` together with its value `r * z_m^e` at the
//! uniformizer `w`. The normalized absolute value is modelled by the
//! character with trivial unit part and `r = p`, the value of `|w|^-1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{basic_decomposition, Algebra, Subalgebra};
use crate::error::{Error, Result};
use crate::exact_math::{Cyclotomic, PrimeField};
use crate::group::{abelianization, linear_characters, residue_units, FiniteGroup, LinearChar};

/// How the absolute value is normalized at the uniformizer.
pub const ABSOLUTE_VALUE_CONVENTION: &str = "r = p models |.|^-1, i.e. the value |w|^-1 = p at the uniformizer";

/// Shared `(Z/p^k)^x`, so characters built separately are comparable.
pub fn residue_group(p: u32, k: u32) -> Result<Arc<FiniteGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FiniteGroup>>>> = OnceLock::new();
    PrimeField::supported(p)?;
    let modulus = modulus(p, k)?;
    let mut cache = CACHE.get_or_init(Default::default).lock().expect("cache lock");
    if let Some(g) = cache.get(&modulus) {
        return Ok(g.clone());
    }
    let g = Arc::new(residue_units(modulus)?);
    cache.insert(modulus, g.clone());
    Ok(g)
}

fn modulus(p: u32, k: u32) -> Result<u32> {
    p.checked_pow(k).filter(|&m| m <= 1 << 16).ok_or(Error::TooLarge {
        what: "residue ring modulus",
        size: (p as u64).saturating_pow(k),
        cap: 1 << 16,
    })
}

/// A smooth character of `K^x` of level `k`.
#[derive(Debug, Clone)]
pub struct SmoothCharLocal {
    p: u32,
    k: u32,
    unit_part: LinearChar,
    r: BigRational,
    phase_m: u32,
    phase_e: u32,
}

impl SmoothCharLocal {
    /// `unit_part` must be a character of [`residue_group`]`(p, k)`.
    pub fn new(p: u32, k: u32, unit_part: LinearChar, r: BigRational, phase: (u32, u32)) -> Result<Self> {
        let g = residue_group(p, k)?;
        unit_part.check_group(&g)?;
        if !r.is_positive() {
            return Err(Error::PreconditionFailure(
                "the modulus at the uniformizer must be positive".into(),
            ));
        }
        let (m, e) = phase;
        if m == 0 {
            return Err(Error::InvalidConductor(0));
        }
        let d = m.gcd(&(e % m)).max(1);
        Ok(Self {
            p,
            k,
            unit_part: unit_part.normalized(),
            r,
            phase_m: m / d,
            phase_e: (e % m) / d,
        })
    }

    /// Unramified character `w -> r`.
    pub fn unramified(p: u32, r: BigRational) -> Result<Self> {
        let g = residue_group(p, 0)?;
        Self::new(p, 0, LinearChar::trivial(&g), r, (1, 0))
    }

    /// The absolute-value character, see [`ABSOLUTE_VALUE_CONVENTION`].
    pub fn absolute_value(p: u32) -> Result<Self> {
        Self::unramified(p, BigRational::from_integer(BigInt::from(p)))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn unit_part(&self) -> &LinearChar {
        &self.unit_part
    }

    pub fn modulus(&self) -> &BigRational {
        &self.r
    }

    /// `(m, e)` with the phase `z_m^e` in lowest terms.
    pub fn phase(&self) -> (u32, u32) {
        (self.phase_m, self.phase_e)
    }

    pub fn is_unitary(&self) -> bool {
        self.r.is_one()
    }

    /// Same character viewed at a higher level.
    pub fn at_level(&self, k: u32) -> Result<Self> {
        if k < self.k {
            return Err(Error::PreconditionFailure(format!(
                "cannot lower level {} to {k}",
                self.k
            )));
        }
        let from = residue_group(self.p, self.k)?;
        let to = residue_group(self.p, k)?;
        let m = modulus(self.p, self.k)?;
        let exps = to
            .elements()
            .map(|x| {
                let id = from.id_of(&[x[0] % m]).expect("reduction of a unit is a unit");
                self.unit_part.exp(id)
            })
            .collect();
        let unit_part = LinearChar::new(&to, self.unit_part.conductor(), exps)?;
        Ok(Self {
            unit_part,
            k,
            ..self.clone()
        })
    }

    /// Value at `u * w^n` for a unit residue `u` coprime to `p`.
    pub fn evaluate(&self, u: u64, n: i64) -> Result<Cyclotomic> {
        if u % self.p as u64 == 0 {
            return Err(Error::PreconditionFailure(format!("{u} is not a unit")));
        }
        let g = residue_group(self.p, self.k)?;
        let m = modulus(self.p, self.k)? as u64;
        let id = g.id_of(&[(u % m) as u32]).expect("unit residue");
        let z = self
            .unit_part
            .value(id)
            .mul(&Cyclotomic::zeta(self.phase_m, self.phase_e as i64 * n));
        let rn = if n >= 0 {
            num::pow(self.r.clone(), n as usize)
        } else {
            num::pow(self.r.recip(), n.unsigned_abs() as usize)
        };
        Ok(z.scale(&rn))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        let k = self.k.max(other.k);
        let (a, b) = (self.at_level(k)?, other.at_level(k)?);
        let m = a.phase_m.lcm(&b.phase_m);
        let e = a.phase_e * (m / a.phase_m) + b.phase_e * (m / b.phase_m);
        Self::new(self.p, k, a.unit_part.mul(&b.unit_part)?, &a.r * &b.r, (m, e))
    }

    /// Equality as functions on `K^x`.
    pub fn same_character(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let k = self.k.max(other.k);
        match (self.at_level(k), other.at_level(k)) {
            (Ok(a), Ok(b)) => {
                a.unit_part.same_values(&b.unit_part) && a.r == b.r && (a.phase_m, a.phase_e) == (b.phase_m, b.phase_e)
            }
            _ => false,
        }
    }

    pub fn record(&self) -> Result<LocalCharRecord> {
        let g = residue_group(self.p, self.k)?;
        Ok(LocalCharRecord {
            p: self.p,
            level: self.k,
            unit_part: UnitPartRecord {
                conductor: self.unit_part.conductor(),
                generators: g
                    .generators()
                    .iter()
                    .map(|&x| (g.element(x)[0], self.unit_part.exp(x)))
                    .collect(),
            },
            r: render_rational(&self.r),
            phase: PhaseRecord {
                conductor: self.phase_m,
                exponent: self.phase_e,
            },
        })
    }
}

fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a` or `a/b` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::SpecError {
        field: "r".into(),
        message: format!("`{text}` is not a rational number"),
    };
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitPartRecord {
    pub conductor: u32,
    /// `(residue, exponent)` on the generators of `(Z/p^k)^x`.
    pub generators: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseRecord {
    pub conductor: u32,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalCharRecord {
    pub p: u32,
    pub level: u32,
    pub unit_part: UnitPartRecord,
    /// Reduced fraction.
    pub r: String,
    pub phase: PhaseRecord,
}

/// Splits `chi` as `unitary * twist` with `twist` unramified and positive
/// at the uniformizer. The split is unique under these constraints.
pub fn factor_unitary(chi: &SmoothCharLocal) -> Result<(SmoothCharLocal, SmoothCharLocal)> {
    let unitary = SmoothCharLocal {
        r: BigRational::one(),
        ..chi.clone()
    };
    let twist = SmoothCharLocal::unramified(chi.p, chi.r.clone())?;
    Ok((unitary, twist))
}

/// Character group of `K^x / (1 + p^k)`: a finite part dual to
/// `(Z/p^k)^x` and a free direction at the uniformizer.
#[derive(Debug, Clone)]
pub struct SmoothCharGroup {
    pub p: u32,
    pub level: u32,
    /// Elementary divisors of `(Z/p^k)^x`, non-increasing.
    pub divisors: Vec<u64>,
    /// One generator per divisor, of that order.
    pub unit_generators: Vec<SmoothCharLocal>,
    /// Representative of the unramified direction: the absolute value.
    pub unramified: SmoothCharLocal,
}

impl SmoothCharGroup {
    /// Order of the finite part.
    pub fn unit_order(&self) -> u64 {
        self.divisors.iter().product()
    }
}

pub fn smooth_char_group(p: u32, k: u32) -> Result<SmoothCharGroup> {
    if k == 0 {
        return Err(Error::PreconditionFailure("level must be at least 1".into()));
    }
    let g = residue_group(p, k)?;
    let ab = abelianization(&g)?;
    let m = ab.exponent() as u32;
    let unit_generators = ab
        .divisors
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let exps = ab.projection.iter().map(|c| c[i] * (m / d as u32)).collect();
            SmoothCharLocal::new(p, k, LinearChar::new(&g, m, exps)?, BigRational::one(), (1, 0))
        })
        .collect::<Result<_>>()?;
    Ok(SmoothCharGroup {
        p,
        level: k,
        divisors: ab.divisors,
        unit_generators,
        unramified: SmoothCharLocal::absolute_value(p)?,
    })
}

/// Every character of `(Z/p^k)^x`, as unitary unramified-phase-free smooth
/// characters of level `k`.
pub fn unit_characters(p: u32, k: u32) -> Result<Vec<SmoothCharLocal>> {
    let g = residue_group(p, k)?;
    linear_characters(&g)?
        .into_iter()
        .map(|c| SmoothCharLocal::new(p, k, c, BigRational::one(), (1, 0)))
        .collect()
}

/// A subalgebra `B` of `A` as the shape of an induction `H = B^x`.
#[derive(Debug, Clone)]
pub struct InductionDatum {
    pub ambient: Arc<Algebra>,
    pub subalgebra: Subalgebra,
    /// Whether the diagonal subalgebra of `A` lies in `B`.
    pub diag_contained: bool,
}

impl InductionDatum {
    pub fn new(ambient: &Arc<Algebra>, subalgebra: Subalgebra) -> Result<Self> {
        if subalgebra.space().ambient_dim() != ambient.dim()
            || subalgebra.space().field() != ambient.field()
            || !subalgebra.contains_one()
            || !subalgebra.mult_closed()
        {
            return Err(Error::PreconditionFailure(
                "not a unital subalgebra of the ambient algebra".into(),
            ));
        }
        let dec = basic_decomposition(ambient)?;
        let diag_contained = dec.diagonal.space().is_subspace_of(subalgebra.space());
        Ok(Self {
            ambient: ambient.clone(),
            subalgebra,
            diag_contained,
        })
    }
}

/// Whether `H = B^x` has the admissible shape, i.e. `B` contains the
/// diagonal subalgebra. This is the decidable one of three equivalent
/// conditions; the other two concern infinite-dimensional modules.
pub fn is_admissible_shape(d: &InductionDatum) -> bool {
    d.diag_contained
}
