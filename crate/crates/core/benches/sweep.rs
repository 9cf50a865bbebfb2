use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use homgeo::catalog;
use homgeo::curvature::{curvature_tensor_with, DEFAULT_SEED};
use homgeo::verify::{milnor_sweep, verify_all};
use homgeo::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("milnor_sweep");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| milnor_sweep(exec)));
    }
    g.finish();
}

fn curvature(c: &mut Criterion) {
    let mut g = c.benchmark_group("curvature_tensor");
    for entry in ["sp11_a3iii", "su21_a3ii"] {
        let space = catalog::build_default(entry).unwrap().space;
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, entry), &space, |b, s| {
                b.iter(|| curvature_tensor_with(s, exec))
            });
        }
    }
    g.finish();
}

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_all");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| verify_all(DEFAULT_SEED, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, sweep, curvature, suite);
criterion_main!(benches);
