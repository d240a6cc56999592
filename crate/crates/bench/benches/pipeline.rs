use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use glyphrun::gaicda::{
    build_graph, cluster_em, cluster_ga, cluster_hierarchical, normalize_features,
};
use glyphrun::texture::document_features;
use glyphrun::{classify_gaicda, Feature, GaParams, GraphParams, RunLengthMatrix};
use glyphrun_bench::{test_features, test_sequences};

fn texture(c: &mut Criterion) {
    let seqs = test_sequences(42);
    c.bench_function("run_length_matrix/15_docs", |b| {
        b.iter(|| {
            for s in &seqs {
                black_box(RunLengthMatrix::from_sequence(black_box(s)).unwrap());
            }
        })
    });
    c.bench_function("features/15_docs", |b| {
        b.iter(|| {
            for s in &seqs {
                black_box(document_features(black_box(s)).unwrap());
            }
        })
    });
}

fn clustering(c: &mut Criterion) {
    let vectors = test_features(42);
    let norm = normalize_features(&vectors, &Feature::DEFAULT_SUBSET).unwrap();
    let graph = build_graph(&norm, &GraphParams::default()).unwrap();
    let ga = GaParams::default();

    c.bench_function("ga/default_params", |b| {
        b.iter(|| black_box(cluster_ga(&graph, &ga).unwrap()))
    });
    c.bench_function("gaicda/end_to_end", |b| {
        b.iter(|| {
            black_box(
                classify_gaicda(
                    &vectors,
                    &Feature::DEFAULT_SUBSET,
                    &GraphParams::default(),
                    &ga,
                )
                .unwrap(),
            )
        })
    });
    c.bench_function("hierarchical/average_linkage", |b| {
        b.iter(|| black_box(cluster_hierarchical(&norm, 3, 0).unwrap()))
    });
    c.bench_function("em/diagonal_gmm", |b| {
        b.iter(|| black_box(cluster_em(&norm, 3, 7).unwrap()))
    });
}

criterion_group!(benches, texture, clustering);
criterion_main!(benches);
