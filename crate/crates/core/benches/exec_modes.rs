use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use nsize::experiments::{random_subset_trial_with, subset_histogram_with};
use nsize::primes::prime_pi_with;
use nsize::{Execution, Limits};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn random_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("random_subset_trial");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "1e6 x 30"), &exec, |b, &exec| {
            b.iter(|| random_subset_trial_with(black_box(1_000_000), 30, 42, exec).unwrap())
        });
    }
    group.finish();
}

fn prime_counting(c: &mut Criterion) {
    let limits = Limits { max_enum: 1 << 30 };
    let mut group = c.benchmark_group("prime_pi");
    group.sample_size(10);
    for n in [10_000_000u128, 100_000_000] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| prime_pi_with(black_box(n), &limits, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn histogram(c: &mut Criterion) {
    let mut group = c.benchmark_group("subset_histogram");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 4000), &exec, |b, &exec| {
            b.iter(|| subset_histogram_with(black_box(4000), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, random_trials, prime_counting, histogram);
criterion_main!(benches);
