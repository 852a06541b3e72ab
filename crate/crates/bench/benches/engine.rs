//! Benchmarks for the exact linear algebra kernel, path-algebra basis
//! enumeration, and the reduction engine on the builtin fixtures.

use bocs_core::matrix::Matrix;
use bocs_core::pathalg::{algebra_basis, DEFAULT_LENGTH_CAP};
use bocs_core::reduce::{run, Limits};
use bocs_core::scalar::{rat, Rat};
use bocs_core::{fixtures, pipelines};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

// ============================================================================
// linear algebra
// ============================================================================

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [8usize, 16, 32] {
        let m = Matrix::from_fn(n, n, |i, j| rat(((i * 7 + j * 3) % 11) as i64 - 5));
        group.bench_function(format!("dense_{n}x{n}"), |b| {
            b.iter(|| black_box(m.rref().rank))
        });
    }
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let m: Matrix<Rat> = Matrix::from_fn(12, 20, |i, j| rat(((i + 2 * j) % 5) as i64 - 2));
    c.bench_function("kernel_basis_12x20", |b| {
        b.iter(|| black_box(m.kernel_basis().len()))
    });
}

// ============================================================================
// path algebra
// ============================================================================

fn bench_algebra_basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("algebra_basis");
    group.bench_function("h4", |b| {
        let pres = fixtures::h4_algebra();
        b.iter(|| black_box(algebra_basis(&pres, DEFAULT_LENGTH_CAP).unwrap().dim()))
    });
    group.bench_function("schur_a6", |b| {
        let pres = fixtures::schur_an_algebra(6);
        b.iter(|| black_box(algebra_basis(&pres, DEFAULT_LENGTH_CAP).unwrap().dim()))
    });
    group.finish();
}

// ============================================================================
// reduction engine
// ============================================================================

fn bench_reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    group.sample_size(10);
    let limits = Limits {
        check_invariants: false,
        ..Limits::default()
    };
    group.bench_function("sl2", |b| {
        let dbq = fixtures::sl2_bocs();
        b.iter(|| black_box(run(&dbq, limits, None).unwrap().state.vertex_count()))
    });
    group.bench_function("d3", |b| {
        let dbq = fixtures::d3_bocs();
        b.iter(|| black_box(run(&dbq, limits, None).unwrap().state.vertex_count()))
    });
    group.bench_function("h4_default_strategy", |b| {
        let dbq = fixtures::h4_bocs();
        b.iter(|| black_box(run(&dbq, limits, None).unwrap().state.vertex_count()))
    });
    group.finish();
}

fn bench_right_algebra(c: &mut Criterion) {
    c.bench_function("right_algebra_dim_schur4", |b| {
        let dbq = fixtures::schur_an_bocs(4);
        b.iter(|| black_box(bocs_core::dbq::right_algebra_dim(&dbq).unwrap()))
    });
}

fn bench_p1(c: &mut Criterion) {
    c.bench_function("p1_construct_d3", |b| {
        let basis = fixtures::d3_algebra_basis();
        b.iter(|| black_box(pipelines::p1_construct(&basis).arrow_count()))
    });
}

criterion_group!(
    benches,
    bench_rref,
    bench_kernel,
    bench_algebra_basis,
    bench_reduction,
    bench_right_algebra,
    bench_p1
);
criterion_main!(benches);
