use std::sync::atomic::{AtomicU64, Ordering};

use crate::engine::atomics::{into_values, write_min};
use crate::engine::{TemporalGraph, VertexSubset};
use crate::model::{QueryWindow, VertexId};
use crate::tcsr::{Direction, NeighborEdge};

/// Weakly connected components of the subgraph of edges inside `w`,
/// ignoring temporal order. Each vertex is labelled with the smallest id in
/// its component.
pub fn connected_components(g: &TemporalGraph, w: QueryWindow) -> Vec<VertexId> {
    let n = g.num_vertices();
    let labels: Vec<AtomicU64> = (0..n as u64).map(AtomicU64::new).collect();
    let update = |s: VertexId, e: &NeighborEdge| {
        let label = labels[s as usize].load(Ordering::Relaxed);
        write_min(&labels[e.neighbor as usize], label)
    };
    let mut frontier = VertexSubset::all(n);
    while !frontier.is_empty() {
        let fwd = g.edge_map(&frontier, Direction::Out, |_| Some(w), update, |_| true);
        frontier = if g.is_directed() {
            let back = g.edge_map(&frontier, Direction::In, |_| Some(w), update, |_| true);
            let mut ids = fwd.to_ids();
            ids.extend(back.to_ids());
            VertexSubset::from_ids(n, ids)
        } else {
            fwd
        };
    }
    into_values(labels).into_iter().map(|l| l as VertexId).collect()
}
