use std::sync::Arc;

use brw_core::character::{char_table, induce, inner_product, multiplicity, restrict, Character};
use brw_core::corpus::default_corpus;
use brw_core::exact_math::Cyclotomic;
use brw_core::group::{conjugacy_classes, unit_group, FiniteGroup, GroupKind, DEFAULT_MAX_ORDER};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus_groups() -> Vec<(String, FiniteGroup)> {
    default_corpus()
        .into_iter()
        .map(|e| {
            let a = Arc::new(e.spec.build().unwrap());
            (e.id.to_string(), unit_group(&a, DEFAULT_MAX_ORDER).unwrap())
        })
        .collect()
}

#[test]
fn corpus_tables_are_healthy() {
    for (id, g) in corpus_groups() {
        let t = char_table(&g).unwrap();
        t.verify().unwrap();
        assert_eq!(t.len(), conjugacy_classes(&g).unwrap().count(), "{id}");
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<i64>(), g.order() as i64, "{id}");
        // first orthogonality, recomputed element by element
        let n = g.order() as i64;
        for (i, a) in t.irreducibles().iter().enumerate() {
            for (j, b) in t.irreducibles().iter().enumerate() {
                let mut acc = Cyclotomic::zero(1);
                for x in 0..g.order() {
                    acc.add_assign(&a.at(x).mul(&b.at(x).conj()));
                }
                let expected = if i == j { n } else { 0 };
                assert_eq!(acc, Cyclotomic::from_int(1, expected), "{id} ({i}, {j})");
            }
        }
    }
}

fn random_subgroup(rng: &mut ChaCha8Rng, g: &FiniteGroup, gens: usize) -> FiniteGroup {
    let ids: Vec<usize> = (0..gens).map(|_| rng.random_range(0..g.order())).collect();
    g.subgroup_generated(&ids, GroupKind::Subgroup("random".into()))
        .unwrap()
}

fn random_irreducible(rng: &mut ChaCha8Rng, g: &FiniteGroup) -> Character {
    let t = char_table(g).unwrap();
    t.irreducibles()[rng.random_range(0..t.len())].clone()
}

#[test]
fn reciprocity_and_transitivity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf20b);
    let groups: Vec<(String, FiniteGroup)> = corpus_groups().into_iter().filter(|(_, g)| g.order() > 4).collect();
    for round in 0..60 {
        let (id, g) = &groups[round % groups.len()];
        let h = random_subgroup(&mut rng, g, 2);
        let k = {
            let inner = random_subgroup(&mut rng, &h, 1);
            let ids: Vec<usize> = inner.elements().map(|e| g.id_of(e).unwrap()).collect();
            g.subgroup_from_ids(&ids, GroupKind::Subgroup("inner".into())).unwrap()
        };
        assert!(k.is_subgroup_of(&h));

        let chi = random_irreducible(&mut rng, g);
        let phi = random_irreducible(&mut rng, &h);
        let up = induce(g, &h, &phi).unwrap();
        let down = restrict(g, &h, &chi).unwrap();
        assert_eq!(
            inner_product(&up, &chi).unwrap(),
            inner_product(&phi, &down).unwrap(),
            "{id} round {round}"
        );
        assert_eq!(up.degree(), phi.degree().map(|d| d * (g.order() / h.order()) as i64));

        let psi = random_irreducible(&mut rng, &k);
        let direct = induce(g, &k, &psi).unwrap();
        let staged = induce(g, &h, &induce(&h, &k, &psi).unwrap()).unwrap();
        assert_eq!(direct, staged, "{id} round {round}");
        // multiplicities are nonnegative integers summing to the right degree
        let t = char_table(g).unwrap();
        let total: i64 = t
            .irreducibles()
            .iter()
            .map(|c| multiplicity(&direct, c).unwrap() * c.degree().unwrap())
            .sum();
        assert_eq!(Some(total), direct.degree());
    }
}
