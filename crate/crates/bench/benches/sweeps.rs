use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ordprop::bounds::{sweep_theorem1, verify_exceptional_m, verify_theorem1_computational_step};
use ordprop::divisors::{sweep_divisor_bounds, sweep_sum_quadratic};
use ordprop::recognition::{table2, verify_theorem2};
use ordprop::sampler::estimate_event;
use ordprop::sampler::Event;
use ordprop::Group;

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    group.bench_function("upper_bound_5_to_150", |b| {
        b.iter(|| black_box(sweep_theorem1(5, 150, 3).unwrap()))
    });
    group.bench_function("shat_step_2000", |b| {
        b.iter(|| black_box(verify_theorem1_computational_step(2000).unwrap()))
    });
    group.bench_function("direct_s_120", |b| {
        b.iter(|| black_box(verify_exceptional_m(120).unwrap()))
    });
    group.bench_function("case_1_to_200", |b| {
        b.iter(|| black_box(verify_theorem2(1, 5, 200).unwrap()))
    });
    group.bench_function("table_rows", |b| b.iter(|| black_box(table2())));
    group.bench_function("divisor_sieve_1e6", |b| {
        b.iter(|| black_box(sweep_divisor_bounds(1_000_000)))
    });
    group.bench_function("sum_quadratic_500", |b| {
        b.iter(|| black_box(sweep_sum_quadratic(500)))
    });
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampling");
    group.sample_size(10);
    group.bench_function("order_divides_n20_1e5", |b| {
        b.iter(|| {
            black_box(
                estimate_event(&Event::OrderDivides(19), Group::Symmetric, 20, 100_000, 1).unwrap(),
            )
        })
    });
    group.bench_function("even_in_a_n50_1e5", |b| {
        b.iter(|| {
            black_box(estimate_event(&Event::Even, Group::Alternating, 50, 100_000, 1).unwrap())
        })
    });
    group.finish();
}

criterion_group!(benches, sweeps, sampling);
criterion_main!(benches);
