use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use a1hilb::cli::verify_charts;
use a1hilb::exec::Execution;
use a1hilb::geom::{enumerate_core_triangulations_with, CoreFilter, LatticeContext};
use a1hilb::ghilb::chart_catalog;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn enumeration(c: &mut Criterion) {
    let ctx = LatticeContext::new(5).unwrap();
    let mut g = c.benchmark_group("enumerate_n5_dominated");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                enumerate_core_triangulations_with(&ctx, CoreFilter::Dominated, mode).unwrap()
            })
        });
    }
    g.finish();
}

fn verification(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_catalog");
    g.sample_size(10);
    for n in [4, 5] {
        let catalog = chart_catalog(n).unwrap();
        for (name, mode) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &mode, |b, &mode| {
                b.iter(|| verify_charts(mode, &catalog, 42, 5))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, enumeration, verification);
criterion_main!(benches);
