use rayon::prelude::*;

use super::{TemporalGraph, VertexSubset};
use crate::model::{Interval, QueryWindow, VertexId};
use crate::tcsr::{Direction, NeighborEdge, PARALLEL_SCAN_GRAIN};

impl TemporalGraph {
    /// Push or pull: pull once the frontier plus its estimated push work
    /// exceeds a twentieth of the stored edges. Push work counts what each
    /// frontier vertex's planned access would read, so a narrow window keeps
    /// large frontiers on the push side where the index applies.
    pub fn prefers_dense<W>(&self, frontier: &VertexSubset, dir: Direction, window_for: W) -> bool
    where
        W: Fn(VertexId) -> Option<QueryWindow> + Sync,
    {
        let work = |v: VertexId| window_for(v).map_or(0, |w| self.access_work(dir, v, w));
        let push: usize = match frontier {
            VertexSubset::Sparse { ids, .. } => ids.par_iter().map(|&v| work(v)).sum(),
            VertexSubset::Dense { flags, .. } => flags
                .par_iter()
                .enumerate()
                .filter(|(_, &f)| f)
                .map(|(v, _)| work(v as VertexId))
                .sum(),
        };
        frontier.len() + push > self.num_stored_edges() / 20
    }

    /// Applies `update(s, edge)` to every `dir`-edge of each frontier vertex
    /// `s` contained in `window_for(s)` whose far endpoint passes `cond`.
    /// Returns the far endpoints for which some update returned true.
    ///
    /// `update` runs concurrently and must only mutate shared state through
    /// atomic min/max writes or test-and-set.
    pub fn edge_map<W, U, C>(&self, frontier: &VertexSubset, dir: Direction, window_for: W, update: U, cond: C) -> VertexSubset
    where
        W: Fn(VertexId) -> Option<QueryWindow> + Sync,
        U: Fn(VertexId, &NeighborEdge) -> bool + Sync,
        C: Fn(VertexId) -> bool + Sync,
    {
        if frontier.is_empty() {
            return VertexSubset::empty(self.num_vertices());
        }
        if self.prefers_dense(frontier, dir, &window_for) {
            self.edge_map_dense(frontier, dir, window_for, update, cond)
        } else {
            self.edge_map_sparse(frontier, dir, window_for, update, cond)
        }
    }

    /// Push-style [`TemporalGraph::edge_map`]: iterates the frontier's own
    /// adjacency with per-vertex access-path selection.
    pub fn edge_map_sparse<W, U, C>(&self, frontier: &VertexSubset, dir: Direction, window_for: W, update: U, cond: C) -> VertexSubset
    where
        W: Fn(VertexId) -> Option<QueryWindow> + Sync,
        U: Fn(VertexId, &NeighborEdge) -> bool + Sync,
        C: Fn(VertexId) -> bool + Sync,
    {
        let visit = |s: VertexId, pos: usize| {
            let e = self.csr(dir).edge_at(pos);
            (cond(e.neighbor) && update(s, &e)).then_some(e.neighbor)
        };
        let out = self.edge_map_collect(&frontier.to_ids(), dir, &window_for, visit);
        VertexSubset::from_ids(self.num_vertices(), out)
    }

    /// Pull-style [`TemporalGraph::edge_map`]: every vertex passing `cond`
    /// scans its opposite-direction adjacency for frontier members.
    pub fn edge_map_dense<W, U, C>(&self, frontier: &VertexSubset, dir: Direction, window_for: W, update: U, cond: C) -> VertexSubset
    where
        W: Fn(VertexId) -> Option<QueryWindow> + Sync,
        U: Fn(VertexId, &NeighborEdge) -> bool + Sync,
        C: Fn(VertexId) -> bool + Sync,
    {
        let n = self.num_vertices();
        self.stats.dense_rounds.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let members = frontier.to_flags();
        let windows: Vec<Option<QueryWindow>> = (0..n)
            .into_par_iter()
            .map(|v| if members[v] { window_for(v as VertexId) } else { None })
            .collect();
        // Union of the member windows bounds which in-edges can qualify.
        let (lo, hi) = windows
            .par_iter()
            .flatten()
            .map(|w| (w.t_a, w.t_b))
            .reduce(|| (u64::MAX, 0), |a, b| (a.0.min(b.0), a.1.max(b.1)));
        let rev = self.csr(dir.reverse());
        let fwd = self.csr(dir);
        let flags = (0..n as VertexId)
            .into_par_iter()
            .map(|d| {
                if !cond(d) {
                    return false;
                }
                let mut hit = false;
                for rpos in rev.segment_starting_in(d, lo, hi) {
                    let s = rev.neighbors()[rpos];
                    let Some(w) = windows[s as usize] else { continue };
                    if !w.contains(rev.starts()[rpos], rev.ends()[rpos]) {
                        continue;
                    }
                    let e = fwd.edge_at(self.cross_position(dir, rpos));
                    if update(s, &e) {
                        hit = true;
                        if !cond(d) {
                            break;
                        }
                    }
                }
                hit
            })
            .collect();
        VertexSubset::from_flags(flags)
    }

    /// [`TemporalGraph::edge_map`] under the graph's ordering predicate.
    ///
    /// `anchor(s)` is the interval of the edge the path used to reach `s`
    /// (`None` at a path origin). Traversing `Out`, candidate edges must
    /// follow the anchor; traversing `In`, they must precede it. The access
    /// window is tightened accordingly and every candidate is re-checked, so
    /// correctness never depends on the access path.
    pub fn temporal_edge_map<A, U, C>(
        &self,
        frontier: &VertexSubset,
        w: QueryWindow,
        dir: Direction,
        anchor: A,
        update: U,
        cond: C,
    ) -> VertexSubset
    where
        A: Fn(VertexId) -> Option<Interval> + Sync,
        U: Fn(VertexId, &NeighborEdge) -> bool + Sync,
        C: Fn(VertexId) -> bool + Sync,
    {
        let ord = self.ordering;
        let window_for = |s: VertexId| match anchor(s) {
            None => Some(w),
            Some(a) => match dir {
                Direction::Out => ord.successor_window(a, w),
                Direction::In => ord.predecessor_window(a, w),
            },
        };
        let checked = |s: VertexId, e: &NeighborEdge| {
            let ok = match anchor(s) {
                None => true,
                Some(a) => {
                    let iv = Interval::new(e.start, e.end);
                    match dir {
                        Direction::Out => ord.holds(a, iv),
                        Direction::In => ord.holds(iv, a),
                    }
                }
            };
            ok && update(s, e)
        };
        self.edge_map(frontier, dir, window_for, checked, cond)
    }

    /// Push-only traversal collecting `f(s, pos)` for every windowed `dir`
    /// edge of the listed frontier vertices. Output is grouped by frontier
    /// vertex in input order; within a vertex the order depends on the
    /// access path.
    pub fn edge_map_collect<T, W, F>(&self, frontier: &[VertexId], dir: Direction, window_for: W, f: F) -> Vec<T>
    where
        T: Send,
        W: Fn(VertexId) -> Option<QueryWindow> + Sync,
        F: Fn(VertexId, usize) -> Option<T> + Sync + Send,
    {
        let csr = self.csr(dir);
        frontier
            .par_iter()
            .flat_map_iter(|&s| {
                let Some(w) = window_for(s) else {
                    return Vec::new();
                };
                if csr.degree(s) >= PARALLEL_SCAN_GRAIN {
                    self.par_edges(dir, s, w, |pos| f(s, pos))
                } else {
                    let mut out = Vec::new();
                    self.for_each_edge(dir, s, w, |pos| out.extend(f(s, pos)));
                    out
                }
            })
            .collect()
    }
}
