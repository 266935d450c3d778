//! Earliest arrival and latest departure with one value per vertex.
//!
//! Under `Succeeds` / `StrictlySucceeds` an earlier arrival (later departure)
//! admits a superset of continuations, so per-vertex values are exact. A
//! vertex re-enters the frontier whenever its value improves; `Visited` flags
//! are cleared every round.

use std::sync::atomic::Ordering;

use super::{labels, PathResult};
use crate::engine::atomics::{atomic_vec, flag_vec, test_and_set, write_max, write_min};
use crate::engine::{TemporalGraph, VertexSubset};
use crate::error::Result;
use crate::model::{Interval, OrderingPredicate, QueryWindow, Timestamp, VertexId};
use crate::tcsr::{Direction, NeighborEdge};

const UNREACHED: u64 = u64::MAX;

/// Earliest end time of a temporal path from `source`; `t[source] = t_a`.
pub fn earliest_arrival(g: &TemporalGraph, source: VertexId, w: QueryWindow) -> Result<PathResult> {
    g.check_vertex(source)?;
    if g.ordering() == OrderingPredicate::Overlaps {
        return labels::earliest_arrival_walk(g, source, w);
    }
    let n = g.num_vertices();
    let t = atomic_vec(n, UNREACHED);
    t[source as usize].store(w.t_a, Ordering::Relaxed);
    let visited = flag_vec(n);
    // Values of frontier vertices as of the start of the round.
    let mut snap = vec![UNREACHED; n];
    let mut frontier = VertexSubset::single(n, source);
    while !frontier.is_empty() {
        let ids = frontier.to_ids();
        for &v in &ids {
            snap[v as usize] = t[v as usize].load(Ordering::Relaxed);
            visited[v as usize].store(false, Ordering::Relaxed);
        }
        let anchor = |v: VertexId| (v != source).then(|| Interval::new(snap[v as usize], snap[v as usize]));
        let update = |_: VertexId, e: &NeighborEdge| {
            write_min(&t[e.neighbor as usize], e.end) && test_and_set(&visited[e.neighbor as usize])
        };
        frontier = g.temporal_edge_map(&frontier, w, Direction::Out, anchor, update, |_| true);
    }
    Ok(t.into_iter()
        .map(|c| Some(c.into_inner()).filter(|&x| x != UNREACHED))
        .collect())
}

/// Latest start time of a temporal path from each vertex to `target`;
/// the target itself gets `t_b`.
pub fn latest_departure(g: &TemporalGraph, target: VertexId, w: QueryWindow) -> Result<PathResult> {
    g.check_vertex(target)?;
    if g.ordering() == OrderingPredicate::Overlaps {
        return labels::latest_departure_walk(g, target, w);
    }
    let n = g.num_vertices();
    // Stores departure + 1; 0 means unreached.
    let dep = atomic_vec(n, 0);
    dep[target as usize].store(u64::MAX, Ordering::Relaxed);
    let visited = flag_vec(n);
    let mut snap: Vec<Timestamp> = vec![0; n];
    let mut frontier = VertexSubset::single(n, target);
    while !frontier.is_empty() {
        let ids = frontier.to_ids();
        for &v in &ids {
            snap[v as usize] = dep[v as usize].load(Ordering::Relaxed).wrapping_sub(1);
            visited[v as usize].store(false, Ordering::Relaxed);
        }
        let anchor = |v: VertexId| (v != target).then(|| Interval::new(snap[v as usize], snap[v as usize]));
        let update = |_: VertexId, e: &NeighborEdge| {
            write_max(&dep[e.neighbor as usize], e.start + 1) && test_and_set(&visited[e.neighbor as usize])
        };
        frontier = g.temporal_edge_map(&frontier, w, Direction::In, anchor, update, |_| true);
    }
    let mut out: PathResult = dep
        .into_iter()
        .map(|c| c.into_inner().checked_sub(1))
        .collect();
    out[target as usize] = Some(w.t_b);
    Ok(out)
}
