use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;
use tgx_bench::random_intervals;
use tgx_core::{HeapMode, IndexAxes, QueryWindow, TgerIndex};

const M: usize = 1 << 18;

fn window_query(c: &mut Criterion) {
    let items = random_intervals(M, 1);
    let index = TgerIndex::build(items.clone(), HeapMode::MaxHeap, IndexAxes::StartPriority);
    let horizon = 4 * M as u64;
    let mut group = c.benchmark_group("window_query");
    for pct in [1u64, 5, 20] {
        let w = QueryWindow::new(horizon - horizon * pct / 100, horizon + 64).unwrap();
        group.bench_with_input(BenchmarkId::new("tger", pct), &w, |b, &w| {
            b.iter(|| {
                let mut n = 0usize;
                index.query_window_with(w, |_, _| n += 1);
                black_box(n)
            })
        });
        group.bench_with_input(BenchmarkId::new("scan", pct), &w, |b, &w| {
            b.iter(|| black_box(items.iter().filter(|(iv, _)| w.contains(iv.start, iv.end)).count()))
        });
    }
    group.finish();
}

fn build(c: &mut Criterion) {
    let items = random_intervals(M, 2);
    let mut group = c.benchmark_group("tger_build");
    group.throughput(Throughput::Elements(M as u64));
    group.sample_size(10);
    group.bench_function("max_heap", |b| {
        b.iter(|| TgerIndex::build(items.clone(), HeapMode::MaxHeap, IndexAxes::StartPriority))
    });
    group.finish();
}

criterion_group!(benches, window_query, build);
criterion_main!(benches);
