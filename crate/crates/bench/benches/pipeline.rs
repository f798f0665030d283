use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;

use paracontact_core::catalog::{example_lie, example_r3};
use paracontact_core::classify::{canonical_basis_at_point, rank_stratification, DEFAULT_TOL};
use paracontact_core::curvature::{curvature_data, infer_nullity};
use paracontact_core::deform::dc_deform;
use paracontact_core::structure::compute_h;
use paracontact_core::Scalar;

fn bench_infer(c: &mut Criterion) {
    let r3 = example_r3();
    c.bench_function("infer r3", |b| b.iter(|| infer_nullity(&r3)));
    let lie = example_lie(3, 2).unwrap();
    c.bench_function("infer lie(3,2)", |b| b.iter(|| infer_nullity(&lie)));
}

fn bench_curvature(c: &mut Criterion) {
    let lie = example_lie(4, 4).unwrap();
    c.bench_function("curvature lie(4,4) dim 9", |b| {
        b.iter(|| curvature_data(&lie))
    });
}

fn bench_rank(c: &mut Criterion) {
    let r3 = example_r3();
    let h = compute_h(&r3);
    c.bench_function("rank stratification r3", |b| {
        b.iter(|| rank_stratification(&h))
    });
}

fn bench_canonical(c: &mut Criterion) {
    let r3 = example_r3();
    let point = vec![
        BigRational::new(BigInt::from(3), BigInt::from(2)),
        BigRational::from_integer(BigInt::from(-1)),
        BigRational::from_integer(BigInt::from(4)),
    ];
    c.bench_function("canonical basis r3", |b| {
        b.iter(|| canonical_basis_at_point(&r3, &point, DEFAULT_TOL).unwrap())
    });
}

fn bench_deform(c: &mut Criterion) {
    let lie = example_lie(2, 2).unwrap();
    let half = Scalar::from_ratio(1, 2);
    c.bench_function("deform lie(2,2)", |b| {
        b.iter_batched(
            || lie.clone(),
            |s| dc_deform(&s, &half).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_infer,
    bench_curvature,
    bench_rank,
    bench_canonical,
    bench_deform
);
criterion_main!(benches);
