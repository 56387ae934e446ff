use std::collections::BTreeSet;

use brw_core::algebra::{is_split_basic, AlgebraSpec};
use brw_core::exact_math::{euler_phi, Cyclotomic};
use brw_core::local::{factor_unitary, unit_characters, SmoothCharLocal};
use num::{BigInt, BigRational};
use proptest::prelude::*;

fn cyclotomic(m: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-4i64..=4, m as usize).prop_map(move |c| Cyclotomic::from_integers(m, &c).unwrap())
}

fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(vec![1u32, 3, 4, 5, 6, 8, 9, 12])
        .prop_flat_map(|m| (cyclotomic(m), cyclotomic(m), cyclotomic(m)))
}

proptest! {
    #[test]
    fn cyclotomic_field_laws((a, b, c) in triple()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        let m = a.conductor();
        prop_assert_eq!(a.embed(2 * m).unwrap().mul(&b.embed(2 * m).unwrap()), a.mul(&b).embed(2 * m).unwrap());
    }

    #[test]
    fn roots_of_unity_have_the_right_order(m in 1u32..=24, k in -30i64..30) {
        let z = Cyclotomic::zeta(m, k);
        let mut acc = Cyclotomic::one(m);
        for _ in 0..m {
            acc = acc.mul(&z);
        }
        prop_assert_eq!(acc, Cyclotomic::one(m));
        prop_assert_eq!(z.mul(&z.conj()), Cyclotomic::one(m));
    }

    #[test]
    fn closed_patterns_are_split_basic(n in 1usize..=4, p in prop::sample::select(vec![2u32, 3]), raw in prop::collection::vec((1usize..=4, 1usize..=4), 0..6)) {
        let mut pairs: BTreeSet<(usize, usize)> = raw.into_iter().filter(|&(i, j)| i < j && j <= n).collect();
        loop {
            let extra: Vec<(usize, usize)> = pairs
                .iter()
                .flat_map(|&(i, j)| pairs.iter().filter(move |&&(j2, _)| j2 == j).map(move |&(_, k)| (i, k)))
                .filter(|x| !pairs.contains(x))
                .collect();
            if extra.is_empty() {
                break;
            }
            pairs.extend(extra);
        }
        let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        let a = AlgebraSpec::pattern(n, p, &pairs).build().unwrap();
        prop_assert_eq!(a.dim(), n + pairs.len());
        let cert = is_split_basic(&a);
        prop_assert!(cert.split_basic);
        prop_assert_eq!(cert.radical_dim, Some(pairs.len()));
        prop_assert_eq!(cert.idempotent_count, Some(n));
    }

    #[test]
    fn factor_unitary_round_trip(
        (p, k) in prop::sample::select(vec![(2u32, 3u32), (3, 2), (5, 1), (7, 1)]),
        pick in 0usize..64,
        num in 1i64..=9,
        den in 1i64..=9,
        m in 1u32..=8,
        e in 0u32..8,
    ) {
        let units = unit_characters(p, k).unwrap();
        let base = &units[pick % units.len()];
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        let chi = SmoothCharLocal::new(p, k, base.unit_part().clone(), r.clone(), (m, e)).unwrap();
        let (unitary, twist) = factor_unitary(&chi).unwrap();
        prop_assert!(unitary.is_unitary());
        prop_assert_eq!(twist.level(), 0);
        prop_assert_eq!(twist.modulus(), &r);
        prop_assert!(unitary.mul(&twist).unwrap().same_character(&chi));
        for u in (1..20u64).filter(|u| u % p as u64 != 0) {
            for n in -2..=2 {
                prop_assert_eq!(
                    chi.evaluate(u, n).unwrap(),
                    unitary.evaluate(u, n).unwrap().mul(&twist.evaluate(u, n).unwrap())
                );
            }
        }
    }

    #[test]
    fn local_records_are_deterministic(
        (p, k) in prop::sample::select(vec![(2u32, 2u32), (3, 2), (5, 1)]),
        pick in 0usize..32,
        m in 1u32..=8,
        e in 0u32..16,
    ) {
        let build = || {
            let units = unit_characters(p, k).unwrap();
            let c = &units[pick % units.len()];
            SmoothCharLocal::new(p, k, c.unit_part().clone(), BigRational::from_integer(BigInt::from(3)), (m, e)).unwrap()
        };
        let (a, b) = (build(), build());
        prop_assert!(a.same_character(&b));
        prop_assert_eq!(
            serde_json::to_string(&a.record().unwrap()).unwrap(),
            serde_json::to_string(&b.record().unwrap()).unwrap()
        );
    }
}

#[test]
fn unit_character_counts_match_euler_phi() {
    for (p, k) in [
        (2u32, 1u32),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (3, 3),
        (5, 1),
        (5, 2),
        (7, 1),
        (7, 2),
    ] {
        let chars = unit_characters(p, k).unwrap();
        assert_eq!(chars.len() as u32, euler_phi(p.pow(k)), "p = {p}, k = {k}");
        for (i, a) in chars.iter().enumerate() {
            for b in &chars[i + 1..] {
                assert!(!a.same_character(b));
            }
        }
    }
}
