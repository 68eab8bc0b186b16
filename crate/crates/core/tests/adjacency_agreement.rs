//! The adjacency oracle and the materialized graph must agree exactly, and
//! tensor adjacency must decompose coordinatewise.

use altgraph_core::graph::TensorPowerOracle;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Samples `pairs` vertex pairs and compares the oracle against the
/// materialized adjacency structure.
fn agreement(n: usize, q: usize, pairs: usize, seed: u64) {
    let oracle = TensorPowerOracle::new(n, q).unwrap();
    let graph = oracle.materialize(4_096).unwrap();
    let count = oracle.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let u = rng.gen_range(0..count);
        let v = rng.gen_range(0..count);
        assert_eq!(
            oracle.adjacent(u, v),
            graph.adjacent(u, v),
            "disagreement at ({u},{v}) for n={n} q={q}"
        );
    }
}

#[test]
fn oracle_matches_materialized_graph_on_sampled_pairs() {
    // 100_000 pairs in total across the three in-scope instances.
    agreement(5, 1, 30_000, 7);
    agreement(6, 1, 30_000, 8);
    agreement(5, 2, 40_000, 9);
}

#[test]
fn tensor_adjacency_decomposes_coordinatewise() {
    let base = TensorPowerOracle::new(5, 1).unwrap();
    let square = TensorPowerOracle::new(5, 2).unwrap();
    let m = base.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50_000 {
        let u = rng.gen_range(0..m * m);
        let v = rng.gen_range(0..m * m);
        let coordinatewise =
            base.adjacent(u / m, v / m) && base.adjacent(u % m, v % m);
        assert_eq!(square.adjacent(u, v), coordinatewise);
    }
}

#[test]
fn no_vertex_is_self_adjacent() {
    for (n, q) in [(4, 1), (5, 1), (6, 1), (4, 2), (5, 2)] {
        let oracle = TensorPowerOracle::new(n, q).unwrap();
        let step = (oracle.vertex_count() / 97).max(1);
        for v in (0..oracle.vertex_count()).step_by(step) {
            assert!(!oracle.adjacent(v, v));
        }
    }
}

#[test]
fn adjacency_is_symmetric_on_samples() {
    let oracle = TensorPowerOracle::new(5, 2).unwrap();
    let count = oracle.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20_000 {
        let u = rng.gen_range(0..count);
        let v = rng.gen_range(0..count);
        assert_eq!(oracle.adjacent(u, v), oracle.adjacent(v, u));
    }
}

#[test]
fn degrees_match_the_connection_set_power() {
    for (n, q, expected) in [(5, 1, 24), (6, 1, 130), (5, 2, 576)] {
        let oracle = TensorPowerOracle::new(n, q).unwrap();
        let graph = oracle.materialize(4_096).unwrap();
        assert_eq!(oracle.degree(), expected);
        for v in 0..graph.vertex_count() {
            assert_eq!(graph.degree(v), expected, "vertex {v} at ({n},{q})");
        }
    }
}
