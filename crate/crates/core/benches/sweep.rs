use std::hint::black_box;

use bimatch::{
    count_max_matchings, count_max_matchings_oracle, count_max_matchings_small, verify_theorems, Bigraph,
    ClassConstraint, SearchOptions,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const IDS: [&str; 4] = ["1.1", "1.2", "1.4", "1.5"];

// Without the `parallel` feature both runs take the sequential path, which
// makes the two builds directly comparable:
//   cargo bench --bench sweep
//   cargo bench --bench sweep --no-default-features
fn sweep(c: &mut Criterion) {
    let class = ClassConstraint::up_to(3, 4, 2);
    let mut group = c.benchmark_group("verify_sweep");
    group.sample_size(10);
    let mode = if cfg!(feature = "parallel") { "rayon" } else { "sequential-build" };
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    for (label, jobs) in [("jobs=1", Some(1)), ("jobs=all", Some(threads))] {
        let opts = SearchOptions { jobs, ..Default::default() };
        group.bench_function(BenchmarkId::new(mode, label), |b| {
            b.iter(|| verify_theorems(black_box(&IDS), &class, &opts).unwrap())
        });
    }
    group.finish();
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_mult: u32) -> Bigraph {
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|_| (0..n).map(|_| if rng.gen_bool(0.6) { rng.gen_range(1..=max_mult) } else { 0 }).collect())
        .collect();
    Bigraph::from_rows(&rows).unwrap()
}

fn engines(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut group = c.benchmark_group("count");
    for n in [6, 9, 12] {
        let g = random_graph(&mut rng, n, 3);
        group.bench_with_input(BenchmarkId::new("permanent", n), &g, |b, g| b.iter(|| count_max_matchings(g)));
        group.bench_with_input(BenchmarkId::new("subset_dp", n), &g, |b, g| b.iter(|| count_max_matchings_small(g)));
        if n <= 9 {
            group.bench_with_input(BenchmarkId::new("oracle", n), &g, |b, g| b.iter(|| count_max_matchings_oracle(g)));
        }
    }
    group.finish();
}

criterion_group!(benches, sweep, engines);
criterion_main!(benches);
