//! Verification runs over the corpus: structural lemmas, character-table
//! oracles and the local factorization grid.

use std::sync::Arc;

use brw_core::algebra::{
    basic_decomposition, bimodule_complement, bimodule_decompose, enumerate_subalgebras, is_split_basic, Algebra,
    Subspace,
};
use brw_core::character::{char_table, induce, inner_product, multiplicity, restrict, Character};
use brw_core::corpus::{corpus_bounds, corpus_entry, default_corpus, truncated_free};
use brw_core::group::{char_orbit, conjugacy_classes, linear_characters, unit_group, FiniteGroup, GroupKind};
use brw_core::gutkin::{
    certify_stabilizer_subalgebra, diag_centraliser, extend_character, ideal_intersection_test, j_sigma,
    scalar_relation_holds, sigma_instances, Frame, SigmaData,
};
use brw_core::local::{unit_characters, SmoothCharLocal};
use brw_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::local::factor_check;
use crate::failure::Failure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub instances: usize,
    pub passed: bool,
    /// A known counterexample that is reproduced rather than a property that holds.
    pub documented_exception: bool,
    pub detail: Option<String>,
}

impl CheckRecord {
    fn new(name: &'static str, outcome: Result<(usize, Option<String>), String>) -> Self {
        match outcome {
            Ok((instances, detail)) => Self {
                name,
                instances,
                passed: true,
                documented_exception: false,
                detail,
            },
            Err(detail) => Self {
                name,
                instances: 0,
                passed: false,
                documented_exception: false,
                detail: Some(detail),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()))
            .collect()
    }
}

type Check = std::result::Result<(usize, Option<String>), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Corpus entries small enough for exhaustive sigma scans.
pub const LEMMA_IDS: [&str; 8] = [
    "b2_f3", "b2_f5", "b3_f2", "b3_f3", "b4_f2", "pat_a_f3", "pat_b_f3", "pat_c_f2",
];

fn frame_of(id: &str, cap: u64) -> std::result::Result<Frame, String> {
    let e = corpus_entry(id).ok_or_else(|| format!("unknown corpus entry {id}"))?;
    let a = Arc::new(e.spec.build().map_err(|e| e.to_string())?);
    Frame::new(&a, cap).map_err(|e| format!("{id}: {e}"))
}

/// Every sigma instance on `1 + J^n`, `n >= 2`.
fn instances(f: &Frame) -> std::result::Result<Vec<SigmaData>, String> {
    let mut out = Vec::new();
    for n in 2..=f.nilpotency_index() {
        out.extend(sigma_instances(f, n).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn check_subalgebras() -> Check {
    let mut count = 0;
    for e in default_corpus() {
        let a = e.spec.build().map_err(|x| x.to_string())?;
        let subs = enumerate_subalgebras(&a, &corpus_bounds()).map_err(|x| format!("{}: {x}", e.id))?;
        for s in &subs {
            let cert = is_split_basic(&s.to_algebra(&a));
            ensure(cert.split_basic, || format!("{}: {:?}", e.id, cert.reason))?;
        }
        count += subs.len();
    }
    Ok((count, None))
}

fn check_bimodules(cap: u64) -> Check {
    let mut count = 0;
    for e in default_corpus() {
        let a = e.spec.build().map_err(|x| x.to_string())?;
        let dec = basic_decomposition(&a).map_err(|x| x.to_string())?;
        let comps = bimodule_decompose(&a, &dec, dec.radical.space()).map_err(|x| x.to_string())?;
        ensure(
            comps.iter().map(|c| c.space.dim()).sum::<usize>() == dec.radical.dim(),
            || format!("{}: radical components do not sum", e.id),
        )?;
        let f = frame_of(e.id, cap)?;
        for n in 2..=f.nilpotency_index() + 1 {
            let (upper, lower) = (f.radical_power(n - 1), f.radical_power(n));
            let c = bimodule_complement(&a, &dec, upper, lower).map_err(|x| format!("{}: {x}", e.id))?;
            ensure(
                c.intersection(lower).is_zero() && c.dim() + lower.dim() == upper.dim(),
                || format!("{}: complement of J^{n} in J^{} is wrong", e.id, n - 1),
            )?;
            let parts = bimodule_decompose(&a, &dec, &c).map_err(|x| x.to_string())?;
            ensure(parts.iter().map(|x| x.space.dim()).sum::<usize>() == c.dim(), || {
                format!("{}: complement components do not sum", e.id)
            })?;
            let layers = f.layer_ideals(n).map_err(|x| x.to_string())?;
            ensure(layers.len() == c.dim() && layers.iter().all(|l| f.is_ideal(l)), || {
                format!("{}: layer ideals at n = {n}", e.id)
            })?;
            count += 1;
        }
    }
    Ok((count, None))
}

fn check_vphi(cap: u64) -> Check {
    let mut count = 0;
    for id in LEMMA_IDS {
        let f = frame_of(id, cap)?;
        for s in instances(&f)? {
            j_sigma(&f, &s).map_err(|e| format!("{id}: {e}"))?;
            ensure(scalar_relation_holds(&f, &s).map_err(|e| e.to_string())?, || {
                format!("{id}: scalar relation fails")
            })?;
            count += 1;
        }
    }
    Ok((count, None))
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

/// Random ideals between `J^2` and `J`, each tested against sampled `G`-invariant sigma.
pub const RANDOM_IDEALS: usize = 24;

fn check_ideals(seed: u64, cap: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = Arc::new(truncated_free(3).build().map_err(|e| e.to_string())?);
    let frames = vec![
        Frame::new(&free, cap).map_err(|e| e.to_string())?,
        frame_of("b3_f3", cap)?,
    ];
    let mut pools = Vec::new();
    for f in &frames {
        let mut pool = Vec::new();
        for s in instances(f)? {
            if char_orbit(f.group(), &s.n_group, &s.sigma)
                .map_err(|e| e.to_string())?
                .len()
                == 1
            {
                pool.push(s);
            }
        }
        ensure(!pool.is_empty(), || "no G-invariant sigma".into())?;
        pools.push(pool);
    }
    let (mut tests, mut proper) = (0, 0);
    for trial in 0..RANDOM_IDEALS {
        let f = &frames[trial % frames.len()];
        let (a, j) = (f.ambient(), f.radical());
        let mut seed_space = f.radical_power(2).clone();
        for _ in 0..rng.random_range(0..=2) {
            let coeffs: Vec<u32> = (0..j.dim()).map(|_| rng.random_range(0..a.p())).collect();
            seed_space = seed_space.with_vector(&j.combine(&coeffs));
        }
        let ideal = ideal_generated(a, &seed_space);
        let pool = &pools[trial % frames.len()];
        for _ in 0..6 {
            let s = &pool[rng.random_range(0..pool.len())];
            let holds = ideal_intersection_test(f, &ideal, s).map_err(|e| e.to_string())?;
            ensure(holds, || format!("trial {trial}: I cap J_sigma is not an ideal"))?;
            if !ideal.is_subspace_of(&j_sigma(f, s).map_err(|e| e.to_string())?) {
                proper += 1;
            }
            tests += 1;
        }
    }
    ensure(proper > 0, || "no sampled sigma cut a random ideal".into())?;
    Ok((
        tests,
        Some(format!(
            "{RANDOM_IDEALS} random ideals over F3, {proper} proper intersections"
        )),
    ))
}

/// The two-element field breaks the intersection property: reproduces the
/// counterexample in `B_4(F_2)`.
fn check_ideal_f2_exception(cap: u64) -> Check {
    let f = frame_of("b4_f2", cap)?;
    let a = f.ambient().clone();
    let e = |i: usize| a.basis(i);
    // basis e11 e12 e13 e14 e22 e23 e24 e33 e34 e44
    let ideal = f.radical_power(2).with_vector(&e(1)).with_vector(&e(8));
    let l = f.radical_power(2).with_vector(&e(5));
    let s = instances(&f)?
        .into_iter()
        .find(|s| {
            let at = |i: usize| {
                s.n_group
                    .id_of(&a.add(a.one(), &e(i)))
                    .map(|x| s.sigma.exp(x))
                    .unwrap_or(0)
            };
            s.l == l && at(2) != 0 && at(6) != 0
        })
        .ok_or("counterexample sigma not found")?;
    let holds = ideal_intersection_test(&f, &ideal, &s).map_err(|e| e.to_string())?;
    ensure(!holds, || "the F2 counterexample no longer fails".into())?;
    Ok((
        1,
        Some("B4(F2): I = J^2 + <e12, e34>, L = J^2 + <e23>; I cap J_sigma = J^2 + <e12 + e34> is not an ideal".into()),
    ))
}

fn check_extensions(cap: u64) -> Check {
    let mut count = 0;
    for id in LEMMA_IDS {
        let f = frame_of(id, cap)?;
        for s in instances(&f)? {
            let ext = extend_character(&f, &s).map_err(|e| format!("{id}: {e}"))?;
            count += ext.all.len();
        }
    }
    Ok((count, None))
}

fn check_centralisers(cap: u64) -> Check {
    let mut count = 0;
    for id in LEMMA_IDS {
        let f = frame_of(id, cap)?;
        let p = f.p_group();
        for theta in linear_characters(p).map_err(|e| e.to_string())? {
            let d = diag_centraliser(&f, f.radical(), p, &theta).map_err(|e| format!("{id}: {e}"))?;
            ensure(d.space().is_subspace_of(f.diagonal()), || {
                format!("{id}: D_theta outside D")
            })?;
            count += 1;
        }
        for s in instances(&f)? {
            let ext = extend_character(&f, &s).map_err(|e| e.to_string())?;
            for theta in &ext.all {
                let d = diag_centraliser(&f, &s.l, &s.q_group, theta).map_err(|e| format!("{id}: {e}"))?;
                ensure(d.contains_one(), || format!("{id}: D_theta is not unital"))?;
                let orbit = char_orbit(f.group(), &s.q_group, theta).map_err(|e| e.to_string())?;
                certify_stabilizer_subalgebra(&f, &orbit.stabilizer).map_err(|e| format!("{id}: {e}"))?;
                count += 2;
            }
        }
    }
    Ok((count, None))
}

/// Structural lemma suite over the default corpus.
pub fn lemma_suite(seed: u64, cap: u64) -> SuiteResult {
    let mut exception = CheckRecord::new("ideal_intersection_f2_counterexample", check_ideal_f2_exception(cap));
    exception.documented_exception = true;
    SuiteResult {
        suite: "lemmas",
        seed,
        checks: vec![
            CheckRecord::new("subalgebras_split_basic", check_subalgebras()),
            CheckRecord::new("bimodule_decomposition", check_bimodules(cap)),
            CheckRecord::new("j_sigma_and_phi_sigma", check_vphi(cap)),
            CheckRecord::new("ideal_intersection_random", check_ideals(seed, cap)),
            exception,
            CheckRecord::new("character_extension", check_extensions(cap)),
            CheckRecord::new("centralisers_and_stabilizers", check_centralisers(cap)),
        ],
    }
}

fn corpus_groups(cap: u64) -> std::result::Result<Vec<(&'static str, FiniteGroup)>, String> {
    default_corpus()
        .into_iter()
        .map(|e| {
            let a = Arc::new(e.spec.build().map_err(|x| x.to_string())?);
            Ok((e.id, unit_group(&a, cap).map_err(|x| x.to_string())?))
        })
        .collect()
}

fn check_tables(cap: u64) -> Check {
    let groups = corpus_groups(cap)?;
    for (id, g) in &groups {
        let t = char_table(g).map_err(|e| format!("{id}: {e}"))?;
        t.verify().map_err(|e| format!("{id}: {e}"))?;
        let classes = conjugacy_classes(g).map_err(|e| e.to_string())?.count();
        ensure(t.len() == classes, || {
            format!("{id}: {} irreducibles, {classes} classes", t.len())
        })?;
        let sum: i64 = t.degrees().iter().map(|d| d * d).sum();
        ensure(sum == g.order() as i64, || {
            format!("{id}: sum of squared degrees {sum}")
        })?;
    }
    Ok((groups.len(), None))
}

fn random_subgroup(rng: &mut ChaCha8Rng, g: &FiniteGroup, gens: usize) -> Result<FiniteGroup> {
    let ids: Vec<usize> = (0..gens).map(|_| rng.random_range(0..g.order())).collect();
    g.subgroup_generated(&ids, GroupKind::Subgroup("random".into()))
}

fn random_irreducible(rng: &mut ChaCha8Rng, g: &FiniteGroup) -> Result<Character> {
    let t = char_table(g)?;
    Ok(t.irreducibles()[rng.random_range(0..t.len())].clone())
}

/// One random chain `K <= H <= G`: Frobenius reciprocity for `H <= G` and
/// transitivity of induction through `H`.
fn triple(rng: &mut ChaCha8Rng, g: &FiniteGroup) -> Result<bool> {
    let h = random_subgroup(rng, g, 2)?;
    let inner = random_subgroup(rng, &h, 1)?;
    let ids: Vec<usize> = inner.elements().filter_map(|e| g.id_of(e)).collect();
    let k = g.subgroup_from_ids(&ids, GroupKind::Subgroup("inner".into()))?;
    let chi = random_irreducible(rng, g)?;
    let phi = random_irreducible(rng, &h)?;
    let reciprocity = inner_product(&induce(g, &h, &phi)?, &chi)? == inner_product(&phi, &restrict(g, &h, &chi)?)?;
    let psi = random_irreducible(rng, &k)?;
    let direct = induce(g, &k, &psi)?;
    let transitive = direct == induce(g, &h, &induce(&h, &k, &psi)?)?;
    let t = char_table(g)?;
    let mut total = 0;
    for c in t.irreducibles() {
        total += multiplicity(&direct, c)? * c.degree().unwrap_or(0);
    }
    Ok(reciprocity && transitive && Some(total) == direct.degree())
}

pub const DEFAULT_TRIPLES: usize = 60;

fn check_triples(seed: u64, count: usize, cap: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups: Vec<_> = corpus_groups(cap)?.into_iter().filter(|(_, g)| g.order() > 4).collect();
    for round in 0..count {
        let (id, g) = &groups[round % groups.len()];
        ensure(triple(&mut rng, g).map_err(|e| format!("{id}: {e}"))?, || {
            format!("{id}: round {round} fails")
        })?;
    }
    Ok((count, None))
}

/// Character-table health on the default corpus plus seeded random induction triples.
pub fn oracle_suite(seed: u64, triples: usize, cap: u64) -> SuiteResult {
    SuiteResult {
        suite: "oracle",
        seed,
        checks: vec![
            CheckRecord::new("tables_verify", check_tables(cap)),
            CheckRecord::new("reciprocity_and_transitivity", check_triples(seed, triples, cap)),
        ],
    }
}

pub const UNITARY_LEVELS: [(u32, u32); 3] = [(2, 3), (3, 2), (5, 1)];
pub const UNITARY_MODULI: [&str; 4] = ["1", "2", "3", "1/2"];
pub const MAX_PHASE_CONDUCTOR: u32 = 8;

fn check_unitary_grid() -> Check {
    let mut count = 0;
    for (p, k) in UNITARY_LEVELS {
        for u in unit_characters(p, k).map_err(|e| e.to_string())? {
            for r in UNITARY_MODULI {
                let r = brw_core::local::parse_rational(r).map_err(|e| e.to_string())?;
                for m in 1..=MAX_PHASE_CONDUCTOR {
                    for e in 0..m {
                        let chi = SmoothCharLocal::new(p, k, u.unit_part().clone(), r.clone(), (m, e))
                            .map_err(|x| x.to_string())?;
                        let res = factor_check(&chi).map_err(|x| x.to_string())?;
                        ensure(res.unitary_has_modulus_one && res.product_equals_input, || {
                            format!("p = {p}, k = {k}, r = {r}, phase {m}:{e}")
                        })?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok((count, None))
}

/// `factor_unitary` round trips over every unit part, modulus and phase of the grid.
pub fn unitary_suite() -> SuiteResult {
    SuiteResult {
        suite: "unitary",
        seed: 0,
        checks: vec![CheckRecord::new("factor_unitary_grid", check_unitary_grid())],
    }
}

pub fn suite_failure(s: &SuiteResult) -> Option<Failure> {
    (!s.passed()).then(|| Failure::Verification(s.failures().join("; ")))
}
