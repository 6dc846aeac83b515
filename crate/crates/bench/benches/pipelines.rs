use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use patfeas::analysis::{dimension_matrix, rank_exact};
use patfeas::colouring::ColouredOverlapGraph;
use patfeas::geometry::{cycle_space_affine_dimension, simple_cycles};
use patfeas::overlap::{OverlapGraph, Walk};
use patfeas::perm::{enumerate_avoiders, PatternSet};

fn bench_enumeration(c: &mut Criterion) {
    let basis = PatternSet::parse("321").unwrap();
    c.bench_function("enumerate_avoiders_321_size_9", |b| {
        b.iter(|| enumerate_avoiders(9, &basis).unwrap().len())
    });
}

fn bench_cycles(c: &mut Criterion) {
    let og = OverlapGraph::build(4, &PatternSet::empty()).unwrap();
    c.bench_function("simple_cycles_unrestricted_k4", |b| {
        b.iter(|| simple_cycles(&og.graph, 10_000_000).unwrap().len())
    });
    let og312 = OverlapGraph::build(4, &PatternSet::parse("312").unwrap()).unwrap();
    c.bench_function("cycle_dimension_312_k4", |b| {
        b.iter(|| cycle_space_affine_dimension(&og312.graph, 10_000_000).unwrap())
    });
}

fn bench_rank(c: &mut Criterion) {
    let m = dimension_matrix(4, 3).unwrap();
    c.bench_function("rank_stacked_matrix_4_3", |b| b.iter(|| rank_exact(&m)));
}

fn bench_realization(c: &mut Criterion) {
    let cog = ColouredOverlapGraph::build(3, 3).unwrap();
    // the three-cycle supporting the packing optimum, repeated
    let by_pretty = |s: &str| {
        (0..cog.graph.edge_count())
            .find(|&e| cog.graph.edges()[e].label.pretty() == s)
            .unwrap()
    };
    let cycle = [
        by_pretty("blue1red3blue2"),
        by_pretty("red3blue12"),
        by_pretty("blue12red3"),
    ];
    c.bench_function("realize_repeated_three_cycle_x30", |b| {
        b.iter_batched(
            || Walk::new(cycle.iter().cycle().take(90).copied().collect()),
            |walk| cog.realize_walk(&walk).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_cycles,
    bench_rank,
    bench_realization
);
criterion_main!(benches);
