use std::fmt;

use crate::error::{Error, Result};

/// Prime moduli accepted for algebras.
pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic on residues modulo a prime, with residues carried as bare `u32`.
///
/// This is the workhorse used by matrices and algebras; [`Fp`] wraps it with
/// a checked, self-describing value type. Any prime below 2^31 is accepted
/// here (the character-table code works modulo auxiliary primes), while
/// algebras restrict themselves to [`SUPPORTED_PRIMES`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::UnsupportedModulus(p));
        }
        Ok(Self { p })
    }

    /// Restricted constructor for the moduli algebras may live over.
    pub fn supported(p: u32) -> Result<Self> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedModulus(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero { p: self.p });
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_root(&self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p - 1;
        let factors = prime_factors(order);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (order / q) as u64) != 1))
            .expect("every prime field has a primitive root")
    }
}

pub(crate) fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of a supported prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        let field = PrimeField::supported(p)?;
        Ok(Self {
            value: field.reduce_i64(value),
            p,
        })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn field_with(&self, other: &Fp) -> Result<PrimeField> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        PrimeField::supported(self.p)
    }

    pub fn add(self, other: Fp) -> Result<Fp> {
        let f = self.field_with(&other)?;
        Ok(Fp {
            value: f.add(self.value, other.value),
            p: self.p,
        })
    }

    pub fn sub(self, other: Fp) -> Result<Fp> {
        let f = self.field_with(&other)?;
        Ok(Fp {
            value: f.sub(self.value, other.value),
            p: self.p,
        })
    }

    pub fn mul(self, other: Fp) -> Result<Fp> {
        let f = self.field_with(&other)?;
        Ok(Fp {
            value: f.mul(self.value, other.value),
            p: self.p,
        })
    }

    pub fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 { 0 } else { self.p - self.value },
            p: self.p,
        }
    }

    pub fn inv(self) -> Result<Fp> {
        let f = PrimeField::supported(self.p)?;
        Ok(Fp {
            value: f.inv(self.value)?,
            p: self.p,
        })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(v: i64, p: u32) -> Fp {
        Fp::new(v, p).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(fp(2, 3).mul(fp(2, 3)).unwrap().value(), 1);
        assert_eq!(fp(1, 2).inv().unwrap().value(), 1);
        assert_eq!(fp(4, 5).add(fp(4, 5)).unwrap().value(), 3);
    }

    #[test]
    fn errors() {
        assert_eq!(fp(0, 7).inv(), Err(Error::DivisionByZero { p: 7 }));
        assert_eq!(fp(1, 3).add(fp(1, 5)), Err(Error::FieldMismatch { left: 3, right: 5 }));
        assert_eq!(Fp::new(1, 11), Err(Error::UnsupportedModulus(11)));
        assert_eq!(Fp::new(1, 4), Err(Error::UnsupportedModulus(4)));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for &p in &SUPPORTED_PRIMES {
            let all: Vec<Fp> = (0..p as i64).map(|v| fp(v, p)).collect();
            let zero = fp(0, p);
            let one = fp(1, p);
            for &a in &all {
                assert_eq!(a.add(zero).unwrap(), a);
                assert_eq!(a.mul(one).unwrap(), a);
                assert_eq!(a.add(a.neg()).unwrap(), zero);
                if a != zero {
                    assert_eq!(a.mul(a.inv().unwrap()).unwrap(), one);
                }
                for &b in &all {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    assert_eq!(a.sub(b).unwrap().add(b).unwrap(), a);
                    for &c in &all {
                        let lhs = a.mul(b.add(c).unwrap()).unwrap();
                        let rhs = a.mul(b).unwrap().add(a.mul(c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                        assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(b.mul(c).unwrap()).unwrap());
                        assert_eq!(a.add(b).unwrap().add(c).unwrap(), a.add(b.add(c).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        for p in [3u32, 5, 7, 13, 101, 181] {
            let f = PrimeField::new(p).unwrap();
            let g = f.primitive_root();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..p - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, p - 1);
        }
    }
}
