use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use teamqueue::change::{ParallelContraction, SerialOperator};
use teamqueue::lab::{factoring_suite, flattest_suite, kp_suite, rat_suite, Bounds};
use teamqueue::Aggregator;

fn aggregator_suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("aggregator-suites");
    group.sample_size(10);
    group.bench_function("factoring |W|=3", |b| b.iter(|| factoring_suite(black_box(&Bounds::exhaustive(3, 2)))));
    group.bench_function("rat |W|=3 triples", |b| b.iter(|| rat_suite(black_box(&Bounds::exhaustive(3, 3)))));
    group.bench_function("flattest |W|=4", |b| b.iter(|| flattest_suite(black_box(&Bounds::exhaustive(4, 2)))));
    group.finish();
}

fn contraction_suites(c: &mut Criterion) {
    let op = ParallelContraction::new(SerialOperator::NaturalContraction, Aggregator::Stq);
    let mut group = c.benchmark_group("contraction-suites");
    group.sample_size(10);
    group.bench_function("kp |W|=3", |b| b.iter(|| kp_suite(black_box(&op), &Bounds::exhaustive(3, 2))));
    group.bench_function("kp |W|=4", |b| b.iter(|| kp_suite(black_box(&op), &Bounds::exhaustive(4, 2))));
    group.finish();
}

criterion_group!(benches, aggregator_suites, contraction_suites);
criterion_main!(benches);
