//! Compare the rayon and sequential builds:
//!
//!     cargo bench -p pi-entangle
//!     cargo bench -p pi-entangle --no-default-features
//!
//! Results land under the same group with a `parallel` or `sequential`
//! suffix, so criterion's report shows both side by side.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pi_entangle::angular::clear_cg_cache;
use pi_entangle::cli::oracle_comparison;
use pi_entangle::entanglement::{ef, ef_eigenstate};
use pi_entangle::par::*;
use pi_entangle::states::ghz_like;
use pi_entangle::HalfInt;

fn build() -> &'static str {
    if is_parallel() {
        "parallel"
    } else {
        "sequential"
    }
}

fn magnetization_sweep(particles: u32, n: u32) -> f64 {
    let cases: Vec<(HalfInt, HalfInt)> = ((particles % 2) as i64..=particles as i64)
        .step_by(2)
        .map(HalfInt::from_twice)
        .flat_map(|j| (j.twice() % 2..=j.twice()).step_by(2).map(move |m| (j, HalfInt::from_twice(m))))
        .collect();
    cases.par_iter().map(|&(j, m)| ef_eigenstate(particles, j, m, n).unwrap().ef_bits).sum()
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigenstate_sweep_N50");
    group.sample_size(10);
    for n in [1u32, 25] {
        group.bench_with_input(BenchmarkId::new(build(), n), &n, |b, &n| {
            b.iter(|| {
                clear_cg_cache();
                magnetization_sweep(50, black_box(n))
            })
        });
    }
    group.finish();

    let mut group = c.benchmark_group("ghz_sweep_N40_even");
    group.sample_size(10);
    group.bench_function(build(), |b| {
        b.iter(|| {
            clear_cg_cache();
            (1..=20i64)
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&t| ef(&ghz_like(40, HalfInt::from_twice(2 * t)).unwrap(), 20).unwrap().ef_bits)
                .sum::<f64>()
        })
    });
    group.finish();

    let mut group = c.benchmark_group("oracle_check_nmax8");
    group.sample_size(10);
    group.bench_function(build(), |b| b.iter(|| oracle_comparison(black_box(8)).unwrap()));
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
