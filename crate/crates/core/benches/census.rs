//! Single-thread pool against the default pool on the three heavy paths.
//!
//! Build with `--no-default-features` to time the sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mapcensus::census::SensedCensus;
use mapcensus::oracle::{count_both_oracle, DegreeSpec};
use mapcensus::recurrence::RootedTables;

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let label = format!("default-{}", default.current_num_threads());
    vec![
        (
            "single".to_string(),
            rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .unwrap(),
        ),
        (label, default),
    ]
}

fn rooted_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("rooted_tables_r5_n50");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(&name), |b| {
            b.iter(|| pool.install(|| RootedTables::build(5, 50).unwrap()))
        });
    }
    group.finish();
}

fn sensed_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sensed_sweep_r6_v12");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(&name), |b| {
            b.iter(|| {
                pool.install(|| {
                    let census = SensedCensus::new(6, 12).unwrap();
                    census.sweep().unwrap()
                })
            })
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_r4_12_darts");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(&name), |b| {
            b.iter(|| {
                pool.install(|| count_both_oracle(1, &DegreeSpec::Regular(4), 6, 12).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, rooted_tables, sensed_sweep, oracle);
criterion_main!(benches);
