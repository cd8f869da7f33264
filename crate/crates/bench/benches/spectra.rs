use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lpgst_bench::{chorded_cycle, laplacian_matrix};
use lpgst_core::{eigendecompose, fidelity_sweep, path_spectrum, EigenOptions, VertexPair};

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigendecompose");
    for n in [16, 32, 64] {
        let l = laplacian_matrix(&chorded_cycle(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &l, |b, l| {
            b.iter(|| eigendecompose(black_box(l), &EigenOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let s = path_spectrum(8).unwrap();
    let (from, to) = (VertexPair::edge_at(1), VertexPair::edge_at(7));
    c.bench_function("fidelity_sweep/P8/1e5", |b| {
        b.iter(|| {
            fidelity_sweep(&s, from, to, black_box(500.0), 100_000)
                .unwrap()
                .sup_estimate
        })
    });
}

criterion_group!(benches, eigen, sweep);
criterion_main!(benches);
