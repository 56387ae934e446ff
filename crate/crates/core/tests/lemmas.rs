use std::sync::Arc;

use brw_core::algebra::{
    basic_decomposition, bimodule_complement, bimodule_decompose, enumerate_subalgebras, is_split_basic, Algebra,
    Subspace,
};
use brw_core::corpus::{corpus_bounds, corpus_entry, default_corpus};
use brw_core::group::{char_orbit, linear_characters, DEFAULT_MAX_ORDER};
use brw_core::gutkin::{
    certify_stabilizer_subalgebra, diag_centraliser, extend_character, ideal_intersection_test, j_sigma,
    scalar_relation_holds, sigma_instances, Frame, SigmaData,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn frame(id: &str) -> Frame {
    let a = Arc::new(corpus_entry(id).unwrap().spec.build().unwrap());
    Frame::new(&a, DEFAULT_MAX_ORDER).unwrap()
}

fn all_instances(f: &Frame) -> Vec<SigmaData> {
    (2..=f.nilpotency_index())
        .flat_map(|n| sigma_instances(f, n).unwrap())
        .collect()
}

const SMALL: [&str; 8] = [
    "b2_f3", "b2_f5", "b3_f2", "b3_f3", "b4_f2", "pat_a_f3", "pat_b_f3", "pat_c_f2",
];

#[test]
fn every_enumerated_subalgebra_is_split_basic() {
    for e in default_corpus() {
        let a = e.spec.build().unwrap();
        let subs = enumerate_subalgebras(&a, &corpus_bounds()).unwrap();
        assert!(!subs.is_empty());
        for s in &subs {
            let local = s.to_algebra(&a);
            let cert = is_split_basic(&local);
            assert!(cert.split_basic, "{}: {:?}", e.id, cert.reason);
        }
    }
}

#[test]
fn radical_layers_decompose_into_lines() {
    for e in default_corpus() {
        let a = e.spec.build().unwrap();
        let dec = basic_decomposition(&a).unwrap();
        let comps = bimodule_decompose(&a, &dec, dec.radical.space()).unwrap();
        assert_eq!(
            comps.iter().map(|c| c.space.dim()).sum::<usize>(),
            dec.radical.dim(),
            "{}",
            e.id
        );
        let f = frame(e.id);
        for n in 2..=f.nilpotency_index() + 1 {
            let upper = f.radical_power(n - 1);
            let lower = f.radical_power(n);
            let c = bimodule_complement(&a, &dec, upper, lower).unwrap();
            assert!(c.intersection(lower).is_zero());
            assert_eq!(c.dim() + lower.dim(), upper.dim());
            assert_eq!(
                bimodule_decompose(&a, &dec, &c)
                    .unwrap()
                    .iter()
                    .map(|x| x.space.dim())
                    .sum::<usize>(),
                c.dim()
            );
            let layers = f.layer_ideals(n).unwrap();
            assert_eq!(layers.len(), c.dim());
            assert!(layers.iter().all(|l| f.is_ideal(l)));
        }
    }
}

#[test]
fn j_sigma_and_phi_sigma() {
    let mut checked = 0;
    for id in SMALL {
        let f = frame(id);
        for s in all_instances(&f) {
            let js = j_sigma(&f, &s).unwrap();
            assert!(f.radical_power(2).is_subspace_of(&js));
            assert!(js.dim() + 1 >= f.radical().dim());
            assert!(scalar_relation_holds(&f, &s).unwrap(), "{id}");
            checked += 1;
        }
    }
    assert!(checked >= 30, "only {checked} instances");
}

fn ideal_generated(a: &Algebra, seed: &Subspace) -> Subspace {
    let mut cur = seed.clone();
    loop {
        let mut next = cur.clone();
        for v in cur.basis() {
            for i in 0..a.dim() {
                next = next
                    .with_vector(&a.mul(&a.basis(i), v))
                    .with_vector(&a.mul(v, &a.basis(i)));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn truncated_free(p: u32) -> Frame {
    let a = Arc::new(brw_core::corpus::truncated_free(p).build().unwrap());
    Frame::new(&a, DEFAULT_MAX_ORDER).unwrap()
}

#[test]
fn intersections_with_random_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea);
    let frames: Vec<Frame> = vec![truncated_free(3), frame("b3_f3")];
    // only G-invariant sigma satisfy the hypotheses
    let instances: Vec<Vec<SigmaData>> = frames
        .iter()
        .map(|f| {
            all_instances(f)
                .into_iter()
                .filter(|s| char_orbit(f.group(), &s.n_group, &s.sigma).unwrap().len() == 1)
                .collect()
        })
        .collect();
    let mut trials = 0;
    let mut proper = 0;
    while trials < 24 {
        let f = &frames[trials % frames.len()];
        let a = f.ambient();
        let j = f.radical();
        let mut seed = f.radical_power(2).clone();
        for _ in 0..rng.random_range(0..=2) {
            let coeffs: Vec<u32> = (0..j.dim()).map(|_| rng.random_range(0..a.p())).collect();
            seed = seed.with_vector(&j.combine(&coeffs));
        }
        let ideal = ideal_generated(a, &seed);
        assert!(f.is_ideal(&ideal) && ideal.is_subspace_of(j));
        trials += 1;
        let pool = &instances[(trials - 1) % frames.len()];
        for _ in 0..6 {
            let s = &pool[rng.random_range(0..pool.len())];
            match ideal_intersection_test(f, &ideal, s) {
                Ok(holds) => {
                    assert!(holds, "trial {trials}");
                    let js = j_sigma(f, s).unwrap();
                    if !ideal.is_subspace_of(&js) {
                        proper += 1;
                    }
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(proper > 0, "no trial cut the ideal");
}

#[test]
fn ideal_intersection_fails_over_f2() {
    // basis e11 e12 e13 e14 e22 e23 e24 e33 e34 e44
    let f = frame("b4_f2");
    let a = f.ambient().clone();
    let e = |i: usize| a.basis(i);
    let ideal = f.radical_power(2).with_vector(&e(1)).with_vector(&e(8));
    assert!(f.is_ideal(&ideal));
    let l = f.radical_power(2).with_vector(&e(5));
    let s = all_instances(&f)
        .into_iter()
        .find(|s| {
            let at = |i: usize| s.sigma.exp(s.n_group.id_of(&a.add(a.one(), &e(i))).unwrap());
            s.l == l && at(2) != 0 && at(6) != 0
        })
        .unwrap();
    // [1 + a, 1 + e23] = 1 + a e23 - e23 a modulo J^3, so a = c12 e12 + c34 e34 + ...
    // pairs trivially exactly when c12 = c34
    let js = j_sigma(&f, &s).unwrap();
    assert_eq!(
        js,
        f.radical_power(2).with_vector(&e(5)).with_vector(&a.add(&e(1), &e(8)))
    );
    let meet = ideal.intersection(&js);
    assert_eq!(meet, f.radical_power(2).with_vector(&a.add(&e(1), &e(8))));
    assert!(!f.is_ideal(&meet));
    assert!(!ideal_intersection_test(&f, &ideal, &s).unwrap());
}

#[test]
fn extensions_exist_with_the_predicted_stabilizers() {
    for id in SMALL {
        let f = frame(id);
        for s in all_instances(&f) {
            let ext = extend_character(&f, &s).unwrap();
            assert_eq!(ext.all.len(), s.q_group.order() / s.n_group.order());
            if ext.j_sigma != *f.radical() {
                assert_eq!(ext.orbits.len(), 1);
            }
        }
    }
}

#[test]
fn centralisers_and_stabilizer_subalgebras() {
    for id in SMALL {
        let f = frame(id);
        let p = f.p_group();
        for theta in linear_characters(p).unwrap() {
            let d = diag_centraliser(&f, f.radical(), p, &theta).unwrap();
            assert!(d.space().is_subspace_of(f.diagonal()));
        }
        for s in all_instances(&f) {
            let ext = extend_character(&f, &s).unwrap();
            for theta in &ext.all {
                let d = diag_centraliser(&f, &s.l, &s.q_group, theta).unwrap();
                assert!(d.contains_one());
                let orbit = char_orbit(f.group(), &s.q_group, theta).unwrap();
                let sub = certify_stabilizer_subalgebra(&f, &orbit.stabilizer).unwrap();
                assert_eq!(
                    f.group()
                        .units_in(sub.space(), brw_core::group::GroupKind::Diagonal)
                        .unwrap()
                        .order(),
                    orbit.stabilizer.order()
                );
            }
        }
    }
}
