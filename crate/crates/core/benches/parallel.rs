//! Parallel vs sequential throughput of the two data-parallel kernels:
//! Monte Carlo sampling and enumeration accumulation. Both paths produce
//! bit-identical results; this suite measures what rayon buys.
//!
//! Run with `cargo bench -p trigon`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use trigon::oracle;
use trigon::sampler::SampleRun;
use trigon::weights::WeightSpec;
use trigon::PolygonSpec;

fn bench_monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("monte_carlo");
    for &(n, samples) in &[(8usize, 20_000u64), (16, 20_000), (24, 20_000)] {
        let run = SampleRun {
            n,
            weight: WeightSpec::ears(),
            samples,
            seed: 42,
        };
        group.bench_with_input(BenchmarkId::new("seq", n), &run, |b, run| {
            b.iter(|| oracle::monte_carlo_seq(black_box(run), None).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", n), &run, |b, run| {
            b.iter(|| oracle::monte_carlo_par(black_box(run), None).unwrap())
        });
    }
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enum_distribution");
    group.sample_size(20);
    let f = WeightSpec::blue_sum();
    for &n in &[10usize, 11, 12] {
        group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, &n| {
            b.iter(|| oracle::exact_distribution_seq(black_box(n), &f, None).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, &n| {
            b.iter(|| oracle::exact_distribution_par(black_box(n), &f, None).unwrap())
        });
    }
    group.finish();
}

fn bench_geometric_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("inradius_distribution");
    group.sample_size(20);
    let f = WeightSpec::inradius();
    let n = 11usize;
    let geom = PolygonSpec::regular(n).unwrap();
    group.bench_function("seq", |b| {
        b.iter(|| oracle::exact_distribution_seq(black_box(n), &f, Some(&geom)).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| oracle::exact_distribution_par(black_box(n), &f, Some(&geom)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_monte_carlo,
    bench_enumeration,
    bench_geometric_enumeration
);
criterion_main!(benches);
