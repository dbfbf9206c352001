use std::fs;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use preoperad_core::{build_delta_matrix, compute_cohomology, load_algebra, AlgebraSpec, Calculus, PreOperad, DEFAULT_MEMORY_CAP};

fn fixture(name: &str) -> AlgebraSpec {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    load_algebra(&fs::read_to_string(path).unwrap(), None).unwrap()
}

fn compose(c: &mut Criterion) {
    let spec = fixture("matrix_m2.json");
    let op = spec.operad();
    let f = op.random(3, 1).unwrap();
    let g = op.random(2, 2).unwrap();
    c.bench_function("compose m2 deg3 ∘_1 deg2", |b| b.iter(|| op.compose(black_box(&f), 1, black_box(&g)).unwrap()));
    let calc = Calculus::new(spec.operad(), spec.mu()).unwrap();
    c.bench_function("delta m2 deg3", |b| b.iter(|| calc.delta(black_box(&f)).unwrap()));
    c.bench_function("cup m2 deg2 deg2", |b| b.iter(|| calc.cup(black_box(&g), black_box(&g)).unwrap()));
}

fn linear_algebra(c: &mut Criterion) {
    let spec = fixture("matrix_m2.json");
    c.bench_function("delta matrix m2 n=2", |b| b.iter(|| build_delta_matrix(&spec, 2, DEFAULT_MEMORY_CAP).unwrap()));
    let m = build_delta_matrix(&spec, 2, DEFAULT_MEMORY_CAP).unwrap();
    c.bench_function("rref 256x64", |b| b.iter(|| black_box(&m).rref()));
}

fn cohomology(c: &mut Criterion) {
    let dual = fixture("dual_numbers.json");
    let m2 = fixture("matrix_m2.json");
    c.bench_function("cohomology dual N=3", |b| b.iter(|| compute_cohomology(&dual, 3, DEFAULT_MEMORY_CAP).unwrap()));
    c.bench_function("cohomology m2 N=2", |b| b.iter(|| compute_cohomology(&m2, 2, DEFAULT_MEMORY_CAP).unwrap()));
    let mut group = c.benchmark_group("gerstenhaber");
    group.sample_size(10);
    group.bench_function("suite dual N=3", |b| {
        b.iter(|| compute_cohomology(&dual, 3, DEFAULT_MEMORY_CAP).unwrap().gerstenhaber_suite(50).unwrap())
    });
    group.finish();
}

criterion_group!(benches, compose, linear_algebra, cohomology);
criterion_main!(benches);
