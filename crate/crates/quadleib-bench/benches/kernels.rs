//! Benchmarks for the hot kernels: exact row reduction, identity checking,
//! the extension validator, and the full table-verification harness.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use quadleib::algebra::IdentityKind;
use quadleib::catalog;
use quadleib::construct::{construct_extension, validate_extension, ExtDataAny, ExtKind};
use quadleib::exactlin::{inertia, rref_solve, RMatrix};
use quadleib::sample;

fn bench_rref(c: &mut Criterion) {
    let mut rng = sample::rng_from(sample::MASTER_SEED);
    let m = RMatrix::from_rows(
        (0..12)
            .map(|_| (0..12).map(|_| sample::pool_value(&mut rng)).collect())
            .collect(),
    );
    c.bench_function("rref_12x12_pool", |b| {
        b.iter(|| rref_solve(black_box(&m), None).unwrap())
    });
}

fn bench_inertia(c: &mut Criterion) {
    let entry = catalog::get(
        "osc6",
        &[
            ("lambda1".to_string(), quadleib::exactlin::rint(1)),
            ("lambda2".to_string(), quadleib::exactlin::rint(2)),
            ("mu".to_string(), quadleib::exactlin::rint(1)),
        ]
        .into_iter()
        .collect(),
    )
    .unwrap();
    c.bench_function("inertia_osc6_metric", |b| {
        b.iter(|| inertia(black_box(entry.metric.matrix())).unwrap())
    });
}

fn bench_identity_check(c: &mut Criterion) {
    let entry = catalog::get(
        "n_3(2,2)",
        &[
            ("epsilon".to_string(), quadleib::exactlin::rint(1)),
            ("mu".to_string(), quadleib::exactlin::rint(1)),
        ]
        .into_iter()
        .collect(),
    )
    .unwrap();
    c.bench_function("symmetric_leibniz_check_dim6", |b| {
        b.iter(|| {
            black_box(&entry.algebra)
                .check_identity(IdentityKind::SymmetricLeibniz)
                .passed
        })
    });
}

fn bench_validator(c: &mut Criterion) {
    let mut rng = sample::rng_from(sample::MASTER_SEED + 7);
    let data = ExtDataAny::L(sample::sample_ext_l(&mut rng));
    c.bench_function("validate_extension_l", |b| {
        b.iter(|| validate_extension(ExtKind::L, black_box(&data)).is_valid())
    });
    c.bench_function("construct_extension_l", |b| {
        b.iter(|| construct_extension(black_box(&data), false).unwrap())
    });
}

fn bench_verify_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog");
    group.sample_size(10);
    group.bench_function("verify_all_tables", |b| {
        b.iter(|| catalog::verify(None).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_rref,
    bench_inertia,
    bench_identity_check,
    bench_validator,
    bench_verify_tables
);
criterion_main!(benches);
