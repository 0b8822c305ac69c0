//! Benchmarks for the hot paths: effect summarization, witness
//! search, whole-set classification, the subset sweep, and the
//! rewriter.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pgabr_core::testgen::{self, DEFAULT_SEED};
use pgabr_core::{
    all_targets, analysis_focus, canonical_base, find_witness, rewrite_psi_prime, strict_bound,
    summarize, sweep_subsets, theorem3_fixtures, MethodSet,
};

fn bench_summarize(c: &mut Criterion) {
    let focus = analysis_focus();
    let mut rng = testgen::rng(DEFAULT_SEED);
    let seqs: Vec<_> =
        (0..100).map(|_| testgen::random_sequence(&mut rng, 8, &[focus.clone()])).collect();
    c.bench_function("summarize_100_sequences", |b| {
        b.iter(|| {
            for seq in &seqs {
                black_box(summarize(black_box(seq), &focus).unwrap());
            }
        })
    });
}

fn bench_witness_search(c: &mut Criterion) {
    // The deepest single search among the named sets: the plain
    // overwrite effects need length-4 witnesses over {ff,tt,ii}.
    let m = MethodSet::parse_codes("ff,tt,ii").unwrap();
    let target = all_targets(&analysis_focus())
        .into_iter()
        .find(|t| t.code() == "f.cc")
        .unwrap();
    c.bench_function("find_witness_fttii_fcc_k4", |b| {
        b.iter(|| black_box(find_witness(black_box(m), &target, 4)))
    });
}

fn bench_strict_bound(c: &mut Criterion) {
    let cc = MethodSet::parse_codes("cc").unwrap();
    c.bench_function("strict_bound_cc_k6", |b| {
        b.iter(|| black_box(strict_bound(black_box(cc), 6)))
    });
}

fn bench_sweep(c: &mut Criterion) {
    let base = canonical_base();
    c.bench_function("sweep_255_subsets_k4", |b| {
        b.iter(|| black_box(sweep_subsets(black_box(base), 4)))
    });
}

fn bench_rewrite(c: &mut Criterion) {
    let psi = theorem3_fixtures()[&2][0].clone();
    let foci = testgen::focus_pool(2);
    let mut rng = testgen::rng(DEFAULT_SEED);
    let seqs: Vec<_> = (0..100).map(|_| testgen::random_sequence(&mut rng, 12, &foci)).collect();
    c.bench_function("rewrite_100_sequences", |b| {
        b.iter(|| {
            for seq in &seqs {
                black_box(rewrite_psi_prime(black_box(seq), &psi).unwrap());
            }
        })
    });
}

criterion_group!(
    benches,
    bench_summarize,
    bench_witness_search,
    bench_strict_bound,
    bench_sweep,
    bench_rewrite
);
criterion_main!(benches);
