use std::hint::black_box;

use brw_bench::{algebra, frame, fresh_group};
use brw_core::algebra::enumerate_subalgebras;
use brw_core::character::char_table;
use brw_core::corpus::corpus_bounds;
use brw_core::gutkin::GutkinReport;
use brw_core::local::{factor_unitary, unit_characters};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn dixon(c: &mut Criterion) {
    let mut g = c.benchmark_group("char_table");
    for id in ["b3_f2", "b3_f3", "b4_f2", "pat_a_f3"] {
        g.bench_function(id, |b| {
            b.iter_batched(
                || fresh_group(id),
                |grp| char_table(&grp).unwrap().len(),
                BatchSize::LargeInput,
            )
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_subalgebras");
    g.sample_size(10);
    for id in ["b3_f2", "b3_f3", "pat_c_f2"] {
        let a = algebra(id);
        g.bench_function(id, |b| {
            b.iter(|| enumerate_subalgebras(black_box(&a), &corpus_bounds()).unwrap().len())
        });
    }
    g.finish();
}

fn gutkin(c: &mut Criterion) {
    let mut g = c.benchmark_group("gutkin");
    g.sample_size(10);
    for id in ["b2_f5", "b3_f3", "pat_b_f3"] {
        g.bench_function(format!("{id}/constructive"), |b| {
            b.iter_batched(
                || frame(id),
                |f| GutkinReport::build(&f, true, None).unwrap(),
                BatchSize::LargeInput,
            )
        });
    }
    g.bench_function("b3_f2/both", |b| {
        b.iter_batched(
            || frame("b3_f2"),
            |f| GutkinReport::build(&f, true, Some(&corpus_bounds())).unwrap(),
            BatchSize::LargeInput,
        )
    });
    g.finish();
}

fn local(c: &mut Criterion) {
    let chars = unit_characters(3, 2).unwrap();
    c.bench_function("factor_unitary/p3_k2", |b| {
        b.iter(|| {
            for chi in &chars {
                black_box(factor_unitary(chi).unwrap());
            }
        })
    });
}

criterion_group!(benches, dixon, enumeration, gutkin, local);
criterion_main!(benches);
