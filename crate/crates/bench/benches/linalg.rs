use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use opineq_bench::{dense_symmetric, generic_angle};
use opineq_core::rotation::{tensor_operator, RotationRep, Site, TensorTerm};

fn eigenvalues(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigenvalues");
    for n in [16, 64, 256] {
        let a = dense_symmetric(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| black_box(a.eigenvalues().unwrap())));
    }
    g.finish();
}

fn min_eigenvalue_sweep_point(c: &mut Criterion) {
    let mut g = c.benchmark_group("x_plus_y_min_eig");
    for q in [13, 59] {
        let rep = RotationRep::new(generic_angle(q));
        g.bench_function(BenchmarkId::from_parameter(q), |b| {
            b.iter(|| black_box((&rep.x().scale(2.0) + rep.y()).min_eigenvalue().unwrap()))
        });
    }
    g.finish();
}

fn kron(c: &mut Criterion) {
    let mut g = c.benchmark_group("kron");
    for q in [8, 16] {
        let rep = RotationRep::new(generic_angle(q));
        g.bench_function(BenchmarkId::new("generic", q), |b| b.iter(|| black_box(rep.x().kron(rep.y()).unwrap())));
        let terms = [
            TensorTerm::new(1.0, &[Site::X, Site::Y]),
            TensorTerm::new(1.0, &[Site::Y, Site::X]),
            TensorTerm::new(-0.5, &[Site::XYSym, Site::Z]),
        ];
        g.bench_function(BenchmarkId::new("tensor_operator", q), |b| {
            b.iter(|| black_box(tensor_operator(&rep, &terms).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, eigenvalues, min_eigenvalue_sweep_point, kron);
criterion_main!(benches);
