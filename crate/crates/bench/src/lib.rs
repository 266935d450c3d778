//! Shared fixtures for the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tgx_core::ingest::{generate, GeneratorConfig};
use tgx_core::{GraphConfig, Interval, OrderingPredicate, TemporalEdge, TemporalGraph};

pub fn generated_edges(num_vertices: usize, num_edges: usize) -> Vec<TemporalEdge> {
    generate(&GeneratorConfig {
        num_vertices,
        num_edges,
        seed: 17,
        ..GeneratorConfig::default()
    })
    .expect("valid generator settings")
}

pub fn build(edges: &[TemporalEdge], num_vertices: usize) -> TemporalGraph {
    TemporalGraph::build(edges, num_vertices, true, OrderingPredicate::StrictlySucceeds, GraphConfig::default())
        .expect("valid graph")
}

/// `m` intervals with starts spread over `[0, 4m)`.
pub fn random_intervals(m: usize, seed: u64) -> Vec<(Interval, u32)> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let horizon = 4 * m as u64;
    (0..m)
        .map(|i| {
            let s = r.random_range(0..horizon);
            (Interval::new(s, s + r.random_range(1..=64)), i as u32)
        })
        .collect()
}
