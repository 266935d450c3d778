use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::engine::{vertex_map, TemporalGraph, VertexSubset};
use crate::model::{QueryWindow, VertexId};
use crate::tcsr::{Direction, NeighborEdge};

/// Largest vertex set in which every member has at least `k` windowed
/// incident edges (with multiplicity, self-loops excluded) to other members.
pub fn k_core(g: &TemporalGraph, w: QueryWindow, k: usize) -> VertexSubset {
    let n = g.num_vertices();
    // Undirected graphs store each edge in both directions, so the out side
    // already sees every incident edge.
    let dirs: &[Direction] = if g.is_directed() {
        &[Direction::Out, Direction::In]
    } else {
        &[Direction::Out]
    };
    let deg: Vec<AtomicU64> = (0..n as VertexId)
        .into_par_iter()
        .map(|v| {
            let mut d = 0u64;
            for &dir in dirs {
                let csr = g.csr(dir);
                g.for_each_edge(dir, v, w, |pos| d += (csr.neighbors()[pos] != v) as u64);
            }
            AtomicU64::new(d)
        })
        .collect();
    let alive: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(true)).collect();
    let mut members = VertexSubset::all(n);
    loop {
        let removed = vertex_map(&members, |v| deg[v as usize].load(Ordering::Relaxed) < k as u64);
        if removed.is_empty() {
            break;
        }
        removed
            .to_ids()
            .par_iter()
            .for_each(|&v| alive[v as usize].store(false, Ordering::Relaxed));
        let decrement = |s: VertexId, e: &NeighborEdge| {
            if e.neighbor != s && alive[e.neighbor as usize].load(Ordering::Relaxed) {
                deg[e.neighbor as usize].fetch_sub(1, Ordering::Relaxed);
            }
            false
        };
        for &dir in dirs {
            g.edge_map(&removed, dir, |_| Some(w), decrement, |_| true);
        }
        members = vertex_map(&members, |v| alive[v as usize].load(Ordering::Relaxed));
    }
    members
}
