use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use miser_bench::{rects, segs};
use miser_core::oracle::{exact_mwis, exact_mwis_pruned};
use miser_core::rect::solve_rect;
use miser_core::seg::{solve_exact, solve_seg_pas};

fn rect(c: &mut Criterion) {
    let mut g = c.benchmark_group("rect");
    g.sample_size(10);
    let d = rects(12, 5);
    for k in [1, 2, 3] {
        g.bench_with_input(BenchmarkId::new("solve_rect/eps=0.5", k), &k, |b, &k| b.iter(|| solve_rect(black_box(&d), k, 0.5).unwrap()));
        g.bench_with_input(BenchmarkId::new("oracle", k), &k, |b, &k| b.iter(|| exact_mwis(black_box(&d), k).unwrap()));
    }
    g.finish();
}

fn seg(c: &mut Criterion) {
    let mut g = c.benchmark_group("seg");
    g.sample_size(10);
    let d = segs(12, 5);
    for k in [1, 2, 3] {
        g.bench_with_input(BenchmarkId::new("solve_exact", k), &k, |b, &k| b.iter(|| solve_exact(black_box(&d), k).unwrap()));
        g.bench_with_input(BenchmarkId::new("solve_seg_pas/eps=0.5", k), &k, |b, &k| b.iter(|| solve_seg_pas(black_box(&d), k, 0.5).unwrap()));
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    for n in [10, 16, 22] {
        let d = rects(n, 9);
        g.bench_with_input(BenchmarkId::new("pruned/k=3", n), &d, |b, d| b.iter(|| exact_mwis_pruned(black_box(d), 3)));
    }
    g.finish();
}

criterion_group!(benches, rect, seg, oracle);
criterion_main!(benches);
