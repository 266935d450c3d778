#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tgx_core::{GraphConfig, OrderingPredicate, QueryWindow, TemporalEdge, TemporalGraph};

pub const ORDERINGS: [OrderingPredicate; 3] = [
    OrderingPredicate::StrictlySucceeds,
    OrderingPredicate::Succeeds,
    OrderingPredicate::Overlaps,
];

pub struct Instance {
    pub n: usize,
    pub directed: bool,
    pub edges: Vec<TemporalEdge>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max_n` vertices and `max_m` edges with times in `0..=horizon` and
/// durations in `min_dur..=max_dur`.
pub fn random_instance(r: &mut ChaCha8Rng, max_n: usize, max_m: usize, horizon: u64, min_dur: u64, max_dur: u64) -> Instance {
    let n = r.random_range(1..=max_n);
    let m = r.random_range(0..=max_m);
    let edges = (0..m)
        .map(|_| {
            let start = r.random_range(0..=horizon);
            let end = start + r.random_range(min_dur..=max_dur);
            let w = r.random_range(0.0..4.0);
            TemporalEdge::weighted(r.random_range(0..n) as u32, r.random_range(0..n) as u32, start, end, w)
        })
        .collect();
    Instance {
        n,
        directed: r.random_bool(0.7),
        edges,
    }
}

pub fn random_window(r: &mut ChaCha8Rng, horizon: u64) -> QueryWindow {
    let a = r.random_range(0..=horizon);
    let b = r.random_range(a..=horizon + 8);
    QueryWindow::new(a, b).unwrap()
}

pub fn build(inst: &Instance, ord: OrderingPredicate, config: GraphConfig) -> TemporalGraph {
    TemporalGraph::build(&inst.edges, inst.n, inst.directed, ord, config).unwrap()
}

pub fn config(cutoff: usize, mode: tgx_core::AccessMode) -> GraphConfig {
    GraphConfig {
        index_cutoff: cutoff,
        access_mode: mode,
        ..GraphConfig::default()
    }
}
