// SPDX-License-Identifier: MIT OR Apache-2.0

use std::hint::black_box;

use apts_bench::{replicas, stretched};
use apts_core::baselines::{bu_segment, ggs_segment};
use apts_core::{apts, trade, AptsConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

fn channels(c: &mut Criterion) {
    let cfg = AptsConfig::default();
    let mut group = c.benchmark_group("channels");
    group.sample_size(20);
    for n_x in [1, 10, 50, 100] {
        let data = replicas(n_x);
        group.throughput(Throughput::Elements((n_x * data.len()) as u64));
        group.bench_with_input(BenchmarkId::new("apts", n_x), &data, |b, d| {
            single_thread(|| b.iter(|| apts(black_box(d), &cfg).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("bu", n_x), &data, |b, d| {
            b.iter(|| bu_segment(black_box(d), 5).unwrap())
        });
        if n_x <= 50 {
            group.bench_with_input(BenchmarkId::new("ggs", n_x), &data, |b, d| {
                b.iter(|| ggs_segment(black_box(d), 5, 0.1).unwrap())
            });
        }
    }
    group.finish();
}

fn length(c: &mut Criterion) {
    let mut group = c.benchmark_group("length");
    for len in [100, 400, 1600, 6400] {
        let prices = apts_core::normalize_channel(stretched(len).channel(0)).values;
        group.throughput(Throughput::Elements(len as u64));
        group.bench_with_input(BenchmarkId::new("trade", len), &prices, |b, p| {
            b.iter(|| trade(black_box(p), 0.01).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, channels, length);
criterion_main!(benches);
