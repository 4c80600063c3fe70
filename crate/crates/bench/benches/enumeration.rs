use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use woven_core::instances::{build_ex4_1, build_ex4_2};

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("woven_bounds_exhaustive");
    group.sample_size(10);
    for d in [4, 6, 8, 10] {
        let family = build_ex4_1(d).unwrap().family;
        group.bench_with_input(BenchmarkId::new("shift", d), &family, |b, f| {
            b.iter(|| black_box(f).woven_bounds_exhaustive().unwrap())
        });
    }
    group.finish();
}

fn sampled(c: &mut Criterion) {
    let family = build_ex4_1(16).unwrap().family;
    c.bench_function("woven_bounds_sampled/shift_16", |b| {
        b.iter(|| {
            black_box(&family)
                .woven_bounds_sampled(black_box(256), 0)
                .unwrap()
        })
    });
}

fn witness(c: &mut Criterion) {
    let family = build_ex4_2(10).unwrap().family;
    c.bench_function("find_nonwoven_witness/missing_10", |b| {
        b.iter(|| black_box(&family).find_nonwoven_witness(1e-9).unwrap())
    });
}

criterion_group!(benches, exhaustive, sampled, witness);
criterion_main!(benches);
