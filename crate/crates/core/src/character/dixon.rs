//! Class-sum eigenvector method: the central characters are the common
//! eigenvectors of the class multiplication matrices, computed modulo an
//! auxiliary prime and lifted to cyclotomic integers through eigenvalue
//! multiplicities.

use std::cmp::Ordering;

use super::{CharTable, Character};
use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::exact_math::{is_prime, solve_echelon, Cyclotomic, Matrix, PrimeField};
use crate::group::{conjugacy_classes, FiniteGroup};

/// Smallest prime `l` with `l = 1 mod e` and `l > 2 sqrt(n)`.
pub(crate) fn auxiliary_prime(e: u64, n: u64) -> Result<u32> {
    let mut l = e + 1;
    loop {
        if l * l > 4 * n && l < (1 << 31) && is_prime(l as u32) {
            return Ok(l as u32);
        }
        l += e;
        if l >= 1 << 31 {
            return Err(Error::TooLarge {
                what: "auxiliary prime",
                size: l,
                cap: 1 << 31,
            });
        }
    }
}

pub(crate) fn compute(g: &FiniteGroup) -> Result<CharTable> {
    let classes = conjugacy_classes(g)?;
    let r = classes.count();
    let n = g.order() as u64;
    let e = classes
        .rep_orders
        .iter()
        .fold(1u64, |acc, &o| num::Integer::lcm(&acc, &o));
    let ell = auxiliary_prime(e, n)?;
    let f = PrimeField::new(ell)?;

    // a[i][j][k] = #{x in C_i : x^-1 g_k in C_j}
    let mut a = vec![0u32; r * r * r];
    for i in 0..r {
        for &x in &classes.members[i] {
            let xi = g.inv(x);
            for (k, &gk) in classes.reps.iter().enumerate() {
                let j = classes.class_of[g.mul(xi, gk)];
                a[(i * r + j) * r + k] += 1;
            }
        }
    }
    let class_matrix = |i: usize| {
        let mut m = Matrix::zeros(f, r, r);
        for j in 0..r {
            for k in 0..r {
                m.set(j, k, a[(i * r + j) * r + k] % ell);
            }
        }
        m
    };

    let mut spaces = vec![Subspace::full(f, r)];
    for i in 1..r {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let m = class_matrix(i);
        let mut next = Vec::with_capacity(r);
        for w in spaces {
            if w.dim() == 1 {
                next.push(w);
                continue;
            }
            next.extend(split(&m, &w, f)?);
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::LiftFailure(format!(
            "simultaneous eigenspaces did not separate ({} of {r})",
            spaces.len()
        )));
    }

    let z = f.pow(f.primitive_root(), (ell as u64 - 1) / e);
    let sizes_inv: Vec<u32> = classes
        .sizes
        .iter()
        .map(|&h| f.inv(f.reduce(h as u64)))
        .collect::<Result<_>>()?;
    // class of g_k^t, for t < order(g_k)
    let power_classes: Vec<Vec<usize>> = classes
        .reps
        .iter()
        .zip(&classes.rep_orders)
        .map(|(&gk, &o)| {
            let mut x = 0;
            (0..o)
                .map(|_| {
                    let c = classes.class_of[x];
                    x = g.mul(x, gk);
                    c
                })
                .collect()
        })
        .collect();

    let mut irreducibles = Vec::with_capacity(r);
    for w in &spaces {
        let mut v = w.basis()[0].clone();
        let lead = f
            .inv(v[0])
            .map_err(|_| Error::LiftFailure("eigenvector vanishes on the identity class".into()))?;
        v.iter_mut().for_each(|x| *x = f.mul(*x, lead));
        let mut s = 0u32;
        for k in 0..r {
            s = f.add(s, f.mul(f.mul(v[k], v[classes.inverse_class[k]]), sizes_inv[k]));
        }
        let d2 = f.mul(
            f.reduce(n),
            f.inv(s).map_err(|_| Error::LiftFailure("degenerate norm".into()))?,
        );
        let d = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|&d| f.reduce(d * d) == d2)
            .ok_or_else(|| Error::LiftFailure("no integral degree".into()))?;
        let chi_mod: Vec<u32> = (0..r).map(|k| f.mul(f.mul(f.reduce(d), v[k]), sizes_inv[k])).collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = classes.rep_orders[k];
            let w = f.pow(z, e / o);
            let o_inv = f.inv(f.reduce(o))?;
            let mut coeffs = vec![0i64; e as usize];
            let mut total = 0u64;
            for j in 0..o {
                let mut acc = 0u32;
                for t in 0..o {
                    let val = chi_mod[power_classes[k][t as usize]];
                    acc = f.add(acc, f.mul(val, f.pow(w, ((o - j) * t) % o)));
                }
                let mult = f.mul(acc, o_inv) as u64;
                if mult > d {
                    return Err(Error::LiftFailure(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {d}"
                    )));
                }
                total += mult;
                coeffs[(j * (e / o)) as usize] += mult as i64;
            }
            if total != d {
                return Err(Error::LiftFailure(
                    "eigenvalue multiplicities do not sum to the degree".into(),
                ));
            }
            values.push(Cyclotomic::from_integers(e as u32, &coeffs)?);
        }
        irreducibles.push(Character::from_parts(g.uid(), classes.clone(), values));
    }

    let one = Cyclotomic::one(1);
    irreducibles.sort_by(|x, y| {
        let (dx, dy) = (x.degree().unwrap_or(0), y.degree().unwrap_or(0));
        dx.cmp(&dy)
            .then_with(|| {
                let tx = x.values.iter().all(|v| *v == one);
                let ty = y.values.iter().all(|v| *v == one);
                ty.cmp(&tx)
            })
            .then_with(|| {
                for (a, b) in x.values.iter().zip(&y.values) {
                    match b.cmp_lex(a) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    });

    Ok(CharTable {
        group_uid: g.uid(),
        classes,
        conductor: e as u32,
        auxiliary_prime: ell,
        irreducibles,
    })
}

/// Eigenspaces of `m` restricted to the invariant subspace `w`.
fn split(m: &Matrix, w: &Subspace, f: PrimeField) -> Result<Vec<Subspace>> {
    let d = w.dim();
    let r = m.rows();
    // restriction: column a holds the coordinates of m w_a
    let mut rest = Matrix::zeros(f, d, d);
    for (a, row) in w.basis().iter().enumerate() {
        let image = m.apply(row);
        let c = w
            .coordinates(&image)
            .ok_or_else(|| Error::LiftFailure("eigenspace is not invariant".into()))?;
        for (b, x) in c.into_iter().enumerate() {
            rest.set(b, a, x);
        }
    }
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..f.p() {
        let mut shifted = rest.clone();
        for i in 0..d {
            shifted.set(i, i, f.sub(rest.get(i, i), lambda));
        }
        let ker = solve_echelon(&shifted).kernel;
        if ker.rows() == 0 {
            continue;
        }
        let vecs: Vec<Vec<u32>> = (0..ker.rows()).map(|k| w.combine(ker.row(k))).collect();
        found += vecs.len();
        out.push(Subspace::span(f, r, &vecs));
        if found == d {
            break;
        }
    }
    if found != d {
        return Err(Error::LiftFailure(
            "class matrix is not diagonalizable modulo the auxiliary prime".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auxiliary_primes() {
        // e = 6, |G| = 12: need l = 1 mod 6 and l^2 > 48
        assert_eq!(auxiliary_prime(6, 12).unwrap(), 7);
        assert_eq!(auxiliary_prime(2, 8).unwrap(), 7);
        assert_eq!(auxiliary_prime(6, 216).unwrap(), 31);
    }
}
