use criterion::{criterion_group, criterion_main, Criterion};
use grouplab_bench::{interval_family, random_set};
use grouplab_core::stabilizers::{covering_number, stab_covering_witness, stab_eps, CoverMode, WitnessOptions};
use grouplab_core::{ratio, shatter_function, vc_dimension, FiniteGroup, ShatterMode, Side};
use std::hint::black_box;

fn vc(c: &mut Criterion) {
    let sys = interval_family(128, 3, 10);
    c.bench_function("vc_dimension intervals Z_128", |b| b.iter(|| vc_dimension(black_box(&sys), 8).unwrap()));
}

fn shatter(c: &mut Criterion) {
    let sys = interval_family(64, 2, 8);
    c.bench_function("shatter pi(5) intervals Z_64", |b| {
        b.iter(|| shatter_function(black_box(&sys), 5, ShatterMode::Exact { budget: 10_000_000 }).unwrap())
    });
}

fn stabilizers(c: &mut Criterion) {
    let g = FiniteGroup::dihedral(12).unwrap();
    let a = random_set(&g, 1, 2, 9);
    let eps = ratio(1, 4);
    c.bench_function("stab_eps D_12", |b| b.iter(|| stab_eps(&g, black_box(&a), &eps).unwrap()));
    c.bench_function("covering_number exact D_12", |b| {
        b.iter(|| covering_number(&g, black_box(&a), Side::Left, CoverMode::exact()).unwrap())
    });
    let opts = WitnessOptions::default();
    c.bench_function("stab_covering_witness D_12", |b| {
        b.iter(|| stab_covering_witness(&g, black_box(&a), &eps, &opts).unwrap())
    });
}

criterion_group!(benches, vc, shatter, stabilizers);
criterion_main!(benches);
