use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use opineq_core::symmetrization::{delta2, orbit_identity, orbit_sum, OrbitIdentity};

fn orbit_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit_sum");
    g.sample_size(10);
    for n in [5, 6, 7] {
        let xi = delta2(4, 1);
        g.bench_function(BenchmarkId::new("delta4_squared", n), |b| b.iter(|| black_box(orbit_sum(&xi, n).unwrap())));
    }
    g.finish();
}

fn identities(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit_identity");
    g.sample_size(10);
    for kind in OrbitIdentity::ALL {
        g.bench_function(format!("{kind:?}_m5_n6_d2"), |b| b.iter(|| black_box(orbit_identity(kind, 5, 6, 2).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, orbit_sums, identities);
criterion_main!(benches);
