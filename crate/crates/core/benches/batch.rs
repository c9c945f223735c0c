use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use xbound::batch::{cross_check_suite, eigen_suite, independence_suite, sandwich_suite};
use xbound::graph::Graph;
use xbound::Execution;

const MODES: [(&str, Execution); 2] = [
    ("parallel", Execution::Parallel),
    ("sequential", Execution::Sequential),
];

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("sandwich_24_n8", label), &exec, |b, &e| {
            b.iter(|| sandwich_suite(0..24, 8, e).unwrap())
        });
        group.bench_with_input(
            BenchmarkId::new("cross_check_1000_n8", label),
            &exec,
            |b, &e| b.iter(|| cross_check_suite(1000, 8, e).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("independence_200_n16", label),
            &exec,
            |b, &e| b.iter(|| independence_suite(200, 16, e).unwrap()),
        );
        group.bench_with_input(BenchmarkId::new("eigen_100_n16", label), &exec, |b, &e| {
            b.iter(|| eigen_suite(100, 16, e).unwrap())
        });
    }
    group.finish();
}

fn pipelines(c: &mut Criterion) {
    let chsh = Graph::circulant(8, &[1, 2]).unwrap().complement();
    let mut group = c.benchmark_group("pipelines");
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("chsh_report", label), &exec, |b, &e| {
            b.iter(|| xbound::report::build_report(&chsh, 0, e).unwrap())
        });
        group.bench_with_input(
            BenchmarkId::new("chsh_certificate", label),
            &exec,
            |b, &e| b.iter(|| xbound::exclusivity::ep_certificate(&chsh, e).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, suites, pipelines);
criterion_main!(benches);
