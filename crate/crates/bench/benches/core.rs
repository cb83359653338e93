use criterion::{black_box, criterion_group, criterion_main, Criterion};
use torus_core::dynamics::{fixed_points, orbit_subgroup};
use torus_core::linalg::{smith_normal_form, IntMatrix};
use torus_core::spectral::spectral_data;
use torus_core::torus::ClosedSubgroup;

fn snf(c: &mut Criterion) {
    let m = IntMatrix::from_i64(&[
        [2, 4, 4, -1, 7],
        [-6, 6, 12, 3, 0],
        [10, -4, -16, 9, 2],
        [1, 8, -3, 5, -7],
        [4, 0, 6, -2, 3],
    ]);
    c.bench_function("snf 5x5", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn fixed(c: &mut Criterion) {
    let e = IntMatrix::from_i64(&[[3, 1, 0], [1, 3, 1], [0, 1, 3]]);
    c.bench_function("fixed points 3x3", |b| b.iter(|| fixed_points(black_box(&e)).unwrap()));
}

fn orbit(c: &mut Criterion) {
    let e = IntMatrix::from_i64(&[[0, -1, 0], [2, 0, 1], [0, 1, 2]]);
    let h = ClosedSubgroup::axis(3, 0);
    c.bench_function("orbit 3x3 axis", |b| b.iter(|| orbit_subgroup(black_box(&e), &h, 64, 6)));
}

fn spectral(c: &mut Criterion) {
    let e = IntMatrix::from_i64(&[[2, 1, 0], [1, 3, 1], [1, 0, 4]]);
    c.bench_function("spectral data 3x3", |b| b.iter(|| spectral_data(black_box(&e)).unwrap()));
}

criterion_group!(benches, snf, fixed, orbit, spectral);
criterion_main!(benches);
