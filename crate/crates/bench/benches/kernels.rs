use criterion::{criterion_group, criterion_main, Criterion};
use fockseries::operators::epsilon0_eigenvalue;
use fockseries::{VarSpec, Window};
use fockseries_bench as work;
use std::hint::black_box;

fn series(c: &mut Criterion) {
    c.bench_function("invert ς to z^24", |b| {
        b.iter(|| work::invert_varsigma(black_box(24)).unwrap())
    });
    c.bench_function("dense product, two variables to degree 10", |b| {
        b.iter(|| work::dense_product(black_box(10)).unwrap())
    });
}

fn combinatorics(c: &mut Criterion) {
    c.bench_function("character table S_12", |b| {
        b.iter(|| work::characters(black_box(12)))
    });
    let w = Window::new(vec![VarSpec::laurent("z", 1, 12)]).unwrap();
    let l = work::staircase(5);
    c.bench_function("ε0 eigenvalue (5,4,3,2,1) to z^12", |b| {
        b.iter(|| epsilon0_eigenvalue(black_box(&l), &w, "z").unwrap())
    });
}

fn correlators(c: &mut Criterion) {
    c.bench_function("1-point F• block |λ| = 6, commutator", |b| {
        b.iter(|| work::one_point_block(black_box(6), 8).unwrap())
    });
}

fn traces_and_toda(c: &mut Criterion) {
    let mut g = c.benchmark_group("heavy");
    g.sample_size(10);
    g.bench_function("determinant formula N=2 q^8 z^6", |b| {
        b.iter(|| work::determinant(2, black_box(8), 6).unwrap())
    });
    g.bench_function("Toda residual m=1 K=3 D=4", |b| {
        b.iter(|| work::toda(1, 3, black_box(4)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, series, combinatorics, correlators, traces_and_toda);
criterion_main!(benches);
