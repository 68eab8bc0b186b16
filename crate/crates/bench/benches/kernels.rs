//! Benchmarks for the four hot kernels: graph materialization, dense
//! eigensolves, stabilizer-chain group orders, and maximum independent set
//! enumeration.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};

use altgraph_core::autgroup::{full_automorphism_order, standard_generators};
use altgraph_core::extremal::maximum_independent_sets;
use altgraph_core::graph::{even_derangement_graph, TensorPowerOracle};
use altgraph_core::group::Bsgs;
use altgraph_core::spectral::adjacency_spectrum;

fn bench_materialize(c: &mut Criterion) {
    c.bench_function("materialize_base_degree_6", |b| {
        let oracle = TensorPowerOracle::new(6, 1).unwrap();
        b.iter(|| black_box(oracle.materialize(4096).unwrap()));
    });
    c.bench_function("materialize_tensor_square_degree_5", |b| {
        let oracle = TensorPowerOracle::new(5, 2).unwrap();
        b.iter(|| black_box(oracle.materialize(4096).unwrap()));
    });
}

fn bench_spectrum(c: &mut Criterion) {
    let graph = even_derangement_graph(5).unwrap();
    c.bench_function("eigenvalues_degree_5", |b| {
        b.iter(|| black_box(adjacency_spectrum(&graph, 1e-10, false).unwrap()));
    });
    c.bench_function("eigenvectors_degree_5", |b| {
        b.iter(|| black_box(adjacency_spectrum(&graph, 1e-10, true).unwrap()));
    });
}

fn bench_group_order(c: &mut Criterion) {
    c.bench_function("stabilizer_chain_order_degree_5", |b| {
        let oracle = TensorPowerOracle::new(5, 1).unwrap();
        let generators: Vec<_> = standard_generators(&oracle)
            .unwrap()
            .into_iter()
            .map(|a| a.perm().clone())
            .collect();
        b.iter(|| black_box(Bsgs::new(&generators, 42).unwrap().order()));
    });
}

fn bench_extremal(c: &mut Criterion) {
    let graph = even_derangement_graph(5).unwrap();
    c.bench_function("maximum_independent_sets_degree_5", |b| {
        b.iter(|| black_box(maximum_independent_sets(&graph).unwrap().alpha));
    });
    c.bench_function("refinement_automorphisms_degree_5", |b| {
        b.iter(|| black_box(full_automorphism_order(&graph).unwrap().order));
    });
}

fn tuned() -> Criterion {
    Criterion::default()
        .sample_size(10)
        .measurement_time(Duration::from_secs(4))
        .warm_up_time(Duration::from_secs(1))
}

criterion_group! {
    name = kernels;
    config = tuned();
    targets = bench_materialize, bench_spectrum, bench_group_order, bench_extremal
}
criterion_main!(kernels);
