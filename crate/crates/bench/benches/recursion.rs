use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordprop::proportions::{prop_split, s_hat, s_sum, ProportionTable};

// fresh table per iteration so the memo does not hide the fill cost
fn fill_row(c: &mut Criterion) {
    let mut group = c.benchmark_group("fill_row");
    for &(n, m) in &[(100u64, 60u64), (300, 300), (500, 720), (185, 240)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{n}x{m}")),
            &(n, m),
            |b, &(n, m)| {
                b.iter(|| {
                    let mut t = ProportionTable::new();
                    black_box(t.get(n as i64, m, false))
                })
            },
        );
    }
    group.finish();
}

fn signed_row(c: &mut Criterion) {
    c.bench_function("signed_row_300x600", |b| {
        b.iter(|| {
            let mut t = ProportionTable::new();
            black_box(t.get(300, 600, true))
        })
    });
}

fn split(c: &mut Criterion) {
    let mut t = ProportionTable::new();
    t.get(200, 360, false);
    c.bench_function("split_200x360_warm", |b| {
        b.iter(|| black_box(prop_split(&mut t, 200, 360).unwrap()))
    });
}

fn s_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("s_sums");
    for &m in &[720u64, 5040, 55440] {
        group.bench_with_input(BenchmarkId::new("s_sum", m), &m, |b, &m| {
            b.iter(|| black_box(s_sum(m / 2, m).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("s_hat", m), &m, |b, &m| {
            b.iter(|| black_box(s_hat(m / 2, m).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, fill_row, signed_row, split, s_sums);
criterion_main!(benches);
