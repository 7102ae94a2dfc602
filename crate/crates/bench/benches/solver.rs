use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cross5_bench::candidates;
use cross5_core::coloring::{five_color, ColorPolicy};
use cross5_core::drawing::{eliminate_trivial, validate_drawing};
use cross5_core::graph::construct_named;
use cross5_core::planarity::is_planar;
use cross5_core::random::polyline_drawing;
use cross5_core::solver::{decide_crossing_number, enumerate_good_drawings, Mode, SolverConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn planarity(c: &mut Criterion) {
    let graphs = candidates(1, 200, 12);
    c.bench_function("is_planar/200 candidates", |b| {
        b.iter(|| graphs.iter().filter(|g| is_planar(black_box(g))).count())
    });
}

fn solver(c: &mut Criterion) {
    let cfg = SolverConfig::with_budget(u64::MAX);
    let mut group = c.benchmark_group("solver");
    group.sample_size(10);
    for (name, k) in [("K6", 2), ("K35", 3)] {
        let g = construct_named(name).unwrap();
        group.bench_function(format!("refute {name} k={k}"), |b| {
            b.iter(|| decide_crossing_number(black_box(&g), k, Mode::GoodOnly, &cfg))
        });
    }
    let k5 = construct_named("K5").unwrap();
    group.bench_function("enumerate K5 k=3", |b| {
        b.iter(|| enumerate_good_drawings(black_box(&k5), 3, &cfg))
    });
    group.finish();
}

fn coloring(c: &mut Criterion) {
    let graphs = candidates(2, 200, 9);
    let policy = ColorPolicy::default();
    c.bench_function("five_color/200 candidates", |b| {
        b.iter(|| {
            graphs
                .iter()
                .for_each(|g| drop(black_box(five_color(black_box(g), &policy))))
        })
    });
}

fn drawings(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let drawn: Vec<_> = candidates(3, 50, 8)
        .iter()
        .map(|g| polyline_drawing(g, 1, &mut rng))
        .collect();
    c.bench_function("validate_drawing/50 polyline drawings", |b| {
        b.iter(|| {
            drawn
                .iter()
                .filter(|d| validate_drawing(black_box(d)).is_valid())
                .count()
        })
    });
    c.bench_function("eliminate_trivial/50 polyline drawings", |b| {
        b.iter(|| {
            drawn
                .iter()
                .for_each(|d| drop(black_box(eliminate_trivial(black_box(d)).unwrap())))
        })
    });
}

criterion_group!(benches, planarity, solver, coloring, drawings);
criterion_main!(benches);
