use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use waring_bench::{parabola, points, quartic_h5};
use waring_core::addsemigroup::frobenius_number;
use waring_core::kamke::{solve_power_sums, verify_domain};
use waring_core::pipeline::run_pipeline;
use waring_core::polyseq::{power_sum_decompose, symmetrize};
use waring_core::{GeneratorSet, HeisPoint, KamkeDomain, PipelineConfig, PowerSumTarget, SequenceSpec};

fn group_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("heisenberg");
    for n in [1usize, 3] {
        let pts = points(n, 64);
        group.bench_with_input(BenchmarkId::new("fold_mul", n), &pts, |b, pts| {
            b.iter(|| pts.iter().fold(HeisPoint::identity(n), |acc, p| acc.mul(p).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("log_exp", n), &pts, |b, pts| {
            b.iter(|| pts.iter().map(|p| p.log().exp()).count())
        });
    }
    group.finish();
}

fn semigroup(c: &mut Criterion) {
    let set = GeneratorSet::new(vec![31, 37, 40]).unwrap();
    c.bench_function("frobenius/31,37,40", |b| b.iter(|| frobenius_number(black_box(&set)).unwrap()));
}

fn power_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("kamke");
    let t = PowerSumTarget { s: vec![58, 900] };
    group.bench_function("solve/58,900", |b| b.iter(|| solve_power_sums(black_box(&t), 5, None)));
    let domain = KamkeDomain::preset("kamke-n2").unwrap();
    group.sample_size(10);
    group.bench_function("verify_domain/s1<=60", |b| b.iter(|| verify_domain(&domain, 60)));
    group.finish();
}

fn symbolic(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic");
    group.sample_size(10);
    for (name, g, l) in [("h3_L4", parabola(), 4), ("h5_L3", quartic_h5(), 3)] {
        group.bench_function(BenchmarkId::new("symmetrize_decompose", name), |b| {
            b.iter_batched(
                || g.clone(),
                |g| {
                    let sym = symmetrize(&g, l);
                    let b = sym.total_degree().or_zero();
                    sym.log_entries().iter().map(|e| power_sum_decompose(e, b).unwrap()).count()
                },
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    let spec = SequenceSpec::new(parabola());
    let config = PipelineConfig::default();
    group.bench_function("h3_parabola_50", |b| b.iter(|| run_pipeline(&spec, &config).unwrap()));
    group.finish();
}

criterion_group!(benches, group_ops, semigroup, power_sums, symbolic, pipeline);
criterion_main!(benches);
