//! Shared fixtures for the solver benchmarks.

use tricol::testkit::{gen, scaling_instance, GenKind, GeneratorConfig};
use tricol::Graph;

/// Pendant-tree instances around a `C_{t-2}` with roughly `n` vertices.
pub fn scaling(n: usize, t: usize) -> Graph {
    scaling_instance(n, t, 7).expect("scaling template exists for the benchmark seed")
}

/// A fixed batch of small in-class instances of the given kind.
pub fn corpus(kind: GenKind, n: usize, t: usize, count: u64) -> Vec<Graph> {
    (0..count)
        .filter_map(|seed| gen(&GeneratorConfig::new(kind, n, t, seed)).map(|g| g.graph))
        .collect()
}
