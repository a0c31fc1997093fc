use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use entropic::dist::JointDistribution;
use entropic::exec::Exec;
use entropic::expr::parse_statement;
use entropic::lab::{
    ingleton_excess, search_max_violation, sweep, SearchConfig, SweepConfig, Theorem,
};
use entropic::prover::{dfz_statement, search_script, SearchConfig as ScriptSearch};
use entropic::rational::Rational;
use entropic::varset::Universe;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Exec); 2] = [
    ("parallel", Exec::Parallel),
    ("sequential", Exec::Sequential),
];

/// Eight variables over alphabets of 4: 65536 outcomes, 256 marginals.
fn wide_table() -> JointDistribution {
    let names: Vec<String> = (0..8).map(|i| format!("V{i}")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let weights: Vec<i64> = (0..1 << 16).map(|_| rng.random_range(1..=16)).collect();
    let total: i64 = weights.iter().sum();
    let masses = weights.iter().map(|&w| Rational::new(w, total)).collect();
    JointDistribution::new(Universe::new(names).unwrap(), vec![4; 8], masses).unwrap()
}

fn entropy_profiles(c: &mut Criterion) {
    let d = wide_table();
    let mut group = c.benchmark_group("entropy_profile");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(d.entropy_profile_with(exec)))
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let cfg = SweepConfig::standard(Theorem::Third, 0);
    let mut group = c.benchmark_group("sweep");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(sweep(&cfg, exec).unwrap()))
        });
    }
    group.finish();
}

fn hill_climbing(c: &mut Criterion) {
    let universe = Universe::new(["X", "Y", "A", "B"]).unwrap();
    let mut cfg = SearchConfig::new(universe, vec![2; 4], ingleton_excess("A", "B"), 0);
    cfg.budget = 200;
    cfg.restarts = 8;
    let mut group = c.benchmark_group("search");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(search_max_violation(&cfg, exec).unwrap()))
        });
    }
    group.finish();
}

fn script_search(c: &mut Criterion) {
    let base = Universe::new(["X", "Y", "A", "B"]).unwrap();
    let target = parse_statement(&dfz_statement(2), &base).unwrap();
    let mut group = c.benchmark_group("search_script");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = ScriptSearch {
            exec,
            ..ScriptSearch::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| black_box(search_script(&base, &[], &target, cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    entropy_profiles,
    sweeps,
    hill_climbing,
    script_search
);
criterion_main!(benches);
