use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use tricol::testkit::GenKind;
use tricol::{solve_with, SolveOptions};
use tricol_bench::{corpus, scaling};

fn bench_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("scaling");
    group.sample_size(10);
    for n in [1_000usize, 10_000, 100_000] {
        let g = scaling(n, 9);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| solve_with(black_box(g), &SolveOptions::new(9)).unwrap())
        });
    }
    group.finish();
}

fn bench_small(c: &mut Criterion) {
    let mut group = c.benchmark_group("small");
    for (kind, t) in [
        (GenKind::Random, 9),
        (GenKind::StructuredCyclePendants, 9),
        (GenKind::StructuredTVertices, 9),
        (GenKind::StarGadget, 11),
    ] {
        let graphs = corpus(kind, 24, t, 20);
        group.bench_function(kind.name(), |b| {
            b.iter(|| {
                for g in &graphs {
                    black_box(solve_with(g, &SolveOptions::new(t)).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_jobs(c: &mut Criterion) {
    let graphs = corpus(GenKind::StructuredTVertices, 32, 9, 10);
    let mut group = c.benchmark_group("jobs");
    for jobs in [1usize, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(jobs), &jobs, |b, &jobs| {
            let opts = SolveOptions {
                jobs,
                ..SolveOptions::new(9)
            };
            b.iter(|| {
                for g in &graphs {
                    black_box(solve_with(g, &opts).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_scaling, bench_small, bench_jobs);
criterion_main!(benches);
