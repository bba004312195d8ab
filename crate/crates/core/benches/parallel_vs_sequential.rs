use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use locc_rates::monoid::{achievable_rate_lower_bound, BipartitePureMonoid, SearchParams};
use locc_rates::protocols::{concentration_simulate, concentration_yield_sweep};
use locc_rates::rates::family_values;
use locc_rates::{Execution, PureState, SchmidtSpectrum};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn monoid_search(c: &mut Criterion) {
    let x = SchmidtSpectrum::from_probabilities(&[0.75, 0.25]).unwrap();
    let y = SchmidtSpectrum::from_probabilities(&[0.5, 0.5]).unwrap();
    let params = SearchParams {
        delta: 0.05,
        eps: 0.05,
        n_max: 100,
    };
    let mut group = c.benchmark_group("monoid_search");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| achievable_rate_lower_bound(&BipartitePureMonoid, &x, &y, params, exec).unwrap())
        });
    }
    group.finish();
}

fn concentration(c: &mut Criterion) {
    let mut group = c.benchmark_group("concentration_sweep");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 500), &500u64, |b, &n| {
            b.iter(|| concentration_yield_sweep(black_box(n), 0.25, exec).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("concentration_simulate");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 100_000), &100_000usize, |b, &shots| {
            b.iter(|| concentration_simulate(500, 0.25, black_box(shots), 42, exec).unwrap())
        });
    }
    group.finish();
}

fn cut_entropies(c: &mut Criterion) {
    let phi = PureState::ghz(3, 6).unwrap();
    let mut group = c.benchmark_group("family_values");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| family_values(black_box(&phi), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, monoid_search, concentration, cut_entropies);
criterion_main!(benches);
