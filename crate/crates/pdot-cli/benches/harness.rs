use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, Criterion};
use pdot_cli::harness::{corpus_files, harness_sequential, HarnessOptions};

fn corpus() -> Vec<PathBuf> {
    corpus_files(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")).expect("corpus directory")
}

fn bench_harness(c: &mut Criterion) {
    let files = corpus();
    let opts = HarnessOptions { steps: 50, ..HarnessOptions::default() };
    let mut group = c.benchmark_group("harness");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| harness_sequential(&files, &opts)));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(|| pdot_cli::harness::harness_parallel(&files, &opts)));
    group.finish();
}

criterion_group!(benches, bench_harness);
criterion_main!(benches);
