//! Exact arithmetic in cyclotomic fields `Q(z)` with `z = exp(2*pi*i/m)`.
//!
//! An element is stored over the full power basis `1, z, .., z^(m-1)` but
//! always kept reduced modulo the m-th cyclotomic polynomial, so only the
//! first `phi(m)` coefficients can be nonzero. That reduced vector is the
//! canonical form; two elements of the same conductor are equal iff their
//! vectors are equal. Elements of different conductors are compared after
//! embedding both into the field of the least common multiple.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

fn cyclotomic_polynomial_uncached(m: u32) -> Vec<i64> {
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_div_monic(&poly, &divisor);
        }
    }
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("cache poisoned").get(&m) {
        return p.clone();
    }
    let poly = Arc::new(cyclotomic_polynomial_uncached(m));
    cache.write().expect("cache poisoned").entry(m).or_insert(poly).clone()
}

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count() as u32
}

fn mobius(mut n: u32) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// An element of the cyclotomic field of conductor `m`.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// Builds `sum coeffs[j] z^j` (any length) and reduces it to normal form.
    pub fn new(m: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidConductor(m));
        }
        Ok(Self::from_raw(m, coeffs))
    }

    /// `m` must be positive.
    fn from_raw(m: u32, mut coeffs: Vec<BigRational>) -> Self {
        let mu = m as usize;
        // Fold modulo x^m - 1 first so the vector never exceeds length m.
        if coeffs.len() > mu {
            let tail = coeffs.split_off(mu);
            for (j, c) in tail.into_iter().enumerate() {
                coeffs[j % mu] += c;
            }
        }
        coeffs.resize(mu, BigRational::zero());
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        for d in (deg..mu).rev() {
            if coeffs[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[d], BigRational::zero());
            for (i, &pc) in phi.iter().enumerate().take(deg) {
                if pc != 0 {
                    coeffs[d - deg + i] -= &c * BigRational::from_integer(BigInt::from(pc));
                }
            }
        }
        Self { m, coeffs }
    }

    pub fn from_integers(m: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(
            m,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero(m: u32) -> Self {
        Self::from_raw(m.max(1), Vec::new())
    }

    pub fn from_rational(m: u32, q: BigRational) -> Self {
        Self::from_raw(m.max(1), vec![q])
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    /// `z_m^k`.
    pub fn zeta(m: u32, k: i64) -> Self {
        let m = m.max(1);
        let j = k.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); j + 1];
        coeffs[j] = BigRational::one();
        Self::from_raw(m, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in the field of conductor `l`, a multiple of `m`.
    pub fn embed(&self, l: u32) -> Result<Self> {
        if l == 0 || l % self.m != 0 {
            return Err(Error::InvalidConductor(l));
        }
        if l == self.m {
            return Ok(self.clone());
        }
        let step = (l / self.m) as usize;
        let mut coeffs = vec![BigRational::zero(); l as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[j * step] = c.clone();
            }
        }
        Ok(Self::from_raw(l, coeffs))
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        if self.m == other.m {
            return (self.clone(), other.clone());
        }
        let l = self.m.lcm(&other.m);
        (
            self.embed(l).expect("lcm is a multiple"),
            other.embed(l).expect("lcm is a multiple"),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.m == other.m {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Self { m: self.m, coeffs };
        }
        let (a, b) = self.unify(other);
        a.add(&b)
    }

    pub fn add_assign(&mut self, other: &Self) {
        if self.m == other.m {
            for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
                *a += b;
            }
        } else {
            *self = self.add(other);
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.m != other.m {
            let (a, b) = self.unify(other);
            return a.mul(&b);
        }
        let deg = euler_phi_degree(self.m);
        let mut prod = vec![BigRational::zero(); (2 * deg).max(1)];
        for (i, a) in self.coeffs.iter().enumerate().take(deg) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(deg) {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_raw(self.m, prod)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field automorphism `z -> z^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        let m = self.m as i64;
        let mut coeffs = vec![BigRational::zero(); self.m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(j as i64 * k).rem_euclid(m) as usize] += c;
            }
        }
        Self::from_raw(self.m, coeffs)
    }

    /// Trace from `Q(z_m)` down to `Q`.
    pub fn trace(&self) -> BigRational {
        let phi = euler_phi(self.m) as i64;
        let mut acc = BigRational::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Ramanujan sum c_m(j) = mu(m/g) phi(m) / phi(m/g), g = gcd(j, m).
            let g = (j as u32).gcd(&self.m);
            let q = self.m / g;
            let ram = mobius(q) * phi / euler_phi(q) as i64;
            acc += c * BigRational::from_integer(BigInt::from(ram));
        }
        acc
    }

    /// Lexicographic comparison of coefficient vectors at a common conductor.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        let (a, b) = self.unify(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

fn euler_phi_degree(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

/// Canonical representative of `x` (idempotent).
pub fn cyc_normalize(x: &Cyclotomic) -> Result<Cyclotomic> {
    Cyclotomic::new(x.m, x.coeffs.clone())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.unify(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Renders as `a0 + a1*z + a2*z^2 ...` with `z` the primitive m-th root.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = fmt_rational(&c.abs());
            let term = match j {
                0 => mag,
                1 => format!("{mag}*z"),
                _ => format!("{mag}*z^{j}"),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{term}")?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {term}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
