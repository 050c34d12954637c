use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nilcascade::cascade::compute_cascade;
use nilcascade::invariants::weight_spectrum;
use nilcascade::irrep::build_irrep;
use nilcascade::lipswolf::codegree;
use nilcascade::{RootSystem, Weight};

fn cascades(c: &mut Criterion) {
    c.bench_function("root system + cascade E8", |b| {
        b.iter(|| compute_cascade(&RootSystem::new(black_box("E8").parse().unwrap())))
    });
    let e8 = RootSystem::new("E8".parse().unwrap());
    c.bench_function("chevalley constants E8", |b| {
        b.iter(|| nilcascade::ChevalleyBasis::compute(black_box(&e8)))
    });
}

fn invariants(c: &mut Criterion) {
    let g2 = RootSystem::new("G2".parse().unwrap());
    c.bench_function("spectrum G2 degree 6", |b| b.iter(|| weight_spectrum(black_box(&g2), 6)));
    let d4 = RootSystem::new("D4".parse().unwrap());
    c.bench_function("spectrum D4 degree 3", |b| b.iter(|| weight_spectrum(black_box(&d4), 3)));
}

fn irreps(c: &mut Criterion) {
    let g2 = RootSystem::new("G2".parse().unwrap());
    let lambda = Weight::new(vec![2, 0]);
    c.bench_function("irrep G2 (2,0)", |b| b.iter(|| build_irrep(black_box(&g2), &lambda).unwrap()));
    let v = build_irrep(&g2, &lambda).unwrap();
    c.bench_function("codegree G2 (2,0)", |b| b.iter(|| codegree(black_box(&g2), &v)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = cascades, invariants, irreps
}
criterion_main!(benches);
