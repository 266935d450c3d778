//! Temporal CSR: classic offsets/adjacency arrays plus parallel start-time,
//! end-time and weight arrays, one entry per temporal edge.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{QueryWindow, TemporalEdge, Timestamp, VertexId};

/// Segments at least this long are filtered in parallel.
pub const PARALLEL_SCAN_GRAIN: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        }
    }
}

/// One adjacency entry, addressed by its position in the edge arrays.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NeighborEdge {
    pub neighbor: VertexId,
    pub start: Timestamp,
    pub end: Timestamp,
    pub weight: f64,
    pub pos: usize,
}

/// Structure-of-arrays CSR. Within each vertex segment edges are ordered by
/// `(start, end, neighbor, weight)`.
#[derive(Clone, Debug)]
pub struct TemporalCsr {
    direction: Direction,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    starts: Vec<Timestamp>,
    ends: Vec<Timestamp>,
    /// `None` when every weight is 1.0.
    weights: Option<Vec<f64>>,
}

impl TemporalCsr {
    /// Builds the layout keyed by source (`Out`) or destination (`In`).
    ///
    /// Counting, prefix sum, parallel placement, then a parallel sort of every
    /// segment.
    pub fn build(edges: &[TemporalEdge], num_vertices: usize, direction: Direction) -> Result<Self> {
        Self::build_with_order(edges, num_vertices, direction).map(|(csr, _)| csr)
    }

    /// Like [`TemporalCsr::build`], also returning the input index of the
    /// edge stored at each position.
    pub fn build_with_order(
        edges: &[TemporalEdge],
        num_vertices: usize,
        direction: Direction,
    ) -> Result<(Self, Vec<usize>)> {
        if let Some((index, vertex)) = edges.par_iter().enumerate().find_map_first(|(i, e)| {
            [e.src, e.dst]
                .into_iter()
                .find(|&v| v as usize >= num_vertices)
                .map(|v| (i, v))
        }) {
            return Err(Error::EndpointOutOfRange {
                index,
                vertex,
                num_vertices,
            });
        }

        let key = |e: &TemporalEdge| match direction {
            Direction::Out => e.src,
            Direction::In => e.dst,
        };
        let other = |e: &TemporalEdge| match direction {
            Direction::Out => e.dst,
            Direction::In => e.src,
        };

        let counts: Vec<AtomicUsize> = (0..num_vertices).map(|_| AtomicUsize::new(0)).collect();
        edges.par_iter().for_each(|e| {
            counts[key(e) as usize].fetch_add(1, Ordering::Relaxed);
        });
        let mut offsets = Vec::with_capacity(num_vertices + 1);
        offsets.push(0usize);
        let mut total = 0usize;
        for c in &counts {
            total += c.load(Ordering::Relaxed);
            offsets.push(total);
        }

        let cursors: Vec<AtomicUsize> = offsets[..num_vertices]
            .iter()
            .map(|&o| AtomicUsize::new(o))
            .collect();
        let slots: Vec<AtomicUsize> = (0..edges.len()).map(|_| AtomicUsize::new(0)).collect();
        edges.par_iter().enumerate().for_each(|(i, e)| {
            let pos = cursors[key(e) as usize].fetch_add(1, Ordering::Relaxed);
            slots[pos].store(i, Ordering::Relaxed);
        });
        let mut order: Vec<usize> = slots.into_iter().map(AtomicUsize::into_inner).collect();

        let mut segments = Vec::with_capacity(num_vertices);
        let mut rest = order.as_mut_slice();
        for v in 0..num_vertices {
            let (seg, tail) = rest.split_at_mut(offsets[v + 1] - offsets[v]);
            segments.push(seg);
            rest = tail;
        }
        segments.into_par_iter().for_each(|seg| {
            seg.sort_unstable_by(|&a, &b| {
                let (ea, eb) = (&edges[a], &edges[b]);
                (ea.start, ea.end, other(ea))
                    .cmp(&(eb.start, eb.end, other(eb)))
                    .then(ea.weight.total_cmp(&eb.weight))
            })
        });

        let neighbors = order.par_iter().map(|&i| other(&edges[i])).collect();
        let starts = order.par_iter().map(|&i| edges[i].start).collect();
        let ends = order.par_iter().map(|&i| edges[i].end).collect();
        let weights = if edges.par_iter().all(|e| e.weight == 1.0) {
            None
        } else {
            Some(order.par_iter().map(|&i| edges[i].weight).collect())
        };

        Ok((
            Self {
                direction,
                offsets,
                neighbors,
                starts,
                ends,
                weights,
            },
            order,
        ))
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.len()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbors(&self) -> &[VertexId] {
        &self.neighbors
    }

    pub fn starts(&self) -> &[Timestamp] {
        &self.starts
    }

    pub fn ends(&self) -> &[Timestamp] {
        &self.ends
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    #[inline]
    pub fn segment(&self, v: VertexId) -> Range<usize> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn weight(&self, pos: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[pos])
    }

    #[inline]
    pub fn edge_at(&self, pos: usize) -> NeighborEdge {
        NeighborEdge {
            neighbor: self.neighbors[pos],
            start: self.starts[pos],
            end: self.ends[pos],
            weight: self.weight(pos),
            pos,
        }
    }

    /// Earliest and latest start time in `v`'s segment.
    #[inline]
    pub fn start_bounds(&self, v: VertexId) -> Option<(Timestamp, Timestamp)> {
        let seg = self.segment(v);
        (!seg.is_empty()).then(|| (self.starts[seg.start], self.starts[seg.end - 1]))
    }

    /// Positions of `v`'s edges starting in `[lo, hi]`.
    #[inline]
    pub fn segment_starting_in(&self, v: VertexId, lo: Timestamp, hi: Timestamp) -> Range<usize> {
        let seg = self.segment(v);
        let starts = &self.starts[seg.clone()];
        let a = starts.partition_point(|&s| s < lo);
        let b = a + starts[a..].partition_point(|&s| s <= hi);
        seg.start + a..seg.start + b
    }

    /// Visits the positions of `v`'s edges contained in `window`, in segment
    /// order. Stops at the first edge starting after `window.t_b`.
    #[inline]
    pub fn scan_with(&self, v: VertexId, window: QueryWindow, mut f: impl FnMut(usize)) {
        for pos in self.segment(v) {
            let start = self.starts[pos];
            if start > window.t_b {
                break;
            }
            if start >= window.t_a && self.ends[pos] <= window.t_b {
                f(pos);
            }
        }
    }

    /// Edges of `v` contained in `window`, in segment order. Long segments
    /// are filtered in parallel.
    pub fn scan_neighbors(&self, v: VertexId, window: QueryWindow) -> Vec<NeighborEdge> {
        let seg = self.segment(v);
        if seg.len() < PARALLEL_SCAN_GRAIN {
            let mut out = Vec::new();
            self.scan_with(v, window, |pos| out.push(self.edge_at(pos)));
            return out;
        }
        seg.into_par_iter()
            .filter(|&pos| window.contains(self.starts[pos], self.ends[pos]))
            .map(|pos| self.edge_at(pos))
            .collect()
    }

    /// Flattens back into an edge list in layout order.
    pub fn to_edges(&self) -> Vec<TemporalEdge> {
        (0..self.num_vertices() as VertexId)
            .flat_map(|v| self.segment(v).map(move |pos| (v, pos)))
            .map(|(v, pos)| {
                let nbr = self.neighbors[pos];
                let (src, dst) = match self.direction {
                    Direction::Out => (v, nbr),
                    Direction::In => (nbr, v),
                };
                TemporalEdge::weighted(src, dst, self.starts[pos], self.ends[pos], self.weight(pos))
            })
            .collect()
    }

    /// Checks the structural invariants of the layout.
    pub fn check_invariants(&self) -> bool {
        let n = self.num_edges();
        if self.offsets.first() != Some(&0) || self.offsets.last() != Some(&n) {
            return false;
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        if self.starts.len() != n || self.ends.len() != n {
            return false;
        }
        if self.weights.as_ref().is_some_and(|w| w.len() != n) {
            return false;
        }
        (0..self.num_vertices() as VertexId).all(|v| {
            let seg = self.segment(v);
            seg.clone().all(|p| self.starts[p] <= self.ends[p])
                && seg.clone().zip(seg.clone().skip(1)).all(|(a, b)| {
                    (self.starts[a], self.ends[a], self.neighbors[a])
                        <= (self.starts[b], self.ends[b], self.neighbors[b])
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GraphMeta;
    use proptest::prelude::*;

    fn toy() -> Vec<TemporalEdge> {
        vec![
            TemporalEdge::new(0, 1, 2, 5),
            TemporalEdge::new(0, 2, 1, 3),
            TemporalEdge::new(2, 0, 4, 6),
        ]
    }

    #[test]
    fn empty_graph() {
        let csr = TemporalCsr::build(&[], 3, Direction::Out).unwrap();
        assert_eq!(csr.offsets(), &[0, 0, 0, 0]);
        assert_eq!(csr.num_edges(), 0);
        assert!(csr.scan_neighbors(1, QueryWindow::universal()).is_empty());
    }

    #[test]
    fn out_layout_sorted_by_start() {
        let csr = TemporalCsr::build(&toy(), 3, Direction::Out).unwrap();
        assert_eq!(csr.offsets(), &[0, 2, 2, 3]);
        assert_eq!(&csr.neighbors()[0..2], &[2, 1]);
        assert_eq!(&csr.starts()[0..2], &[1, 2]);
        assert_eq!(&csr.ends()[0..2], &[3, 5]);
        assert!(csr.weights().is_none());
        assert!(csr.check_invariants());
    }

    #[test]
    fn in_layout_is_transpose() {
        let csr = TemporalCsr::build(&toy(), 3, Direction::In).unwrap();
        assert_eq!(csr.offsets(), &[0, 1, 2, 3]);
        assert_eq!(&csr.neighbors()[csr.segment(1)], &[0]);
    }

    #[test]
    fn scan_filters_by_containment() {
        let csr = TemporalCsr::build(&toy(), 3, Direction::Out).unwrap();
        let all = csr.scan_neighbors(0, QueryWindow::new(0, 10).unwrap());
        assert_eq!(all.len(), 2);
        let late = csr.scan_neighbors(0, QueryWindow::new(2, 10).unwrap());
        assert_eq!(late.len(), 1);
        assert_eq!((late[0].neighbor, late[0].start, late[0].end), (1, 2, 5));
        assert!(csr.scan_neighbors(1, QueryWindow::universal()).is_empty());
    }

    #[test]
    fn out_of_range_endpoint_names_edge() {
        let mut edges = toy();
        edges.push(TemporalEdge::new(1, 7, 0, 1));
        match TemporalCsr::build(&edges, 3, Direction::Out) {
            Err(Error::EndpointOutOfRange { index, vertex, .. }) => {
                assert_eq!((index, vertex), (3, 7));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn weights_kept_when_present() {
        let mut edges = toy();
        edges[0].weight = 2.5;
        let csr = TemporalCsr::build(&edges, 3, Direction::Out).unwrap();
        assert_eq!(csr.weight(1), 2.5);
        assert_eq!(csr.weight(0), 1.0);
    }

    fn arb_edges() -> impl Strategy<Value = (usize, Vec<TemporalEdge>)> {
        (1usize..12).prop_flat_map(|n| {
            let edge = (0..n as u32, 0..n as u32, 0u64..50, 0u64..10)
                .prop_map(|(s, d, t, dur)| TemporalEdge::new(s, d, t, t + dur));
            (Just(n), prop::collection::vec(edge, 0..60))
        })
    }

    fn sorted(mut edges: Vec<TemporalEdge>) -> Vec<(u32, u32, u64, u64)> {
        let mut keys: Vec<_> = edges.drain(..).map(|e| (e.src, e.dst, e.start, e.end)).collect();
        keys.sort_unstable();
        keys
    }

    proptest! {
        #[test]
        fn round_trip_and_degrees((n, edges) in arb_edges()) {
            let meta = GraphMeta::from_edges(&edges, n, true).unwrap();
            for dir in [Direction::Out, Direction::In] {
                let csr = TemporalCsr::build(&edges, n, dir).unwrap();
                prop_assert!(csr.check_invariants());
                prop_assert_eq!(sorted(csr.to_edges()), sorted(edges.clone()));
                for v in 0..n as u32 {
                    let expected = match dir {
                        Direction::Out => meta.out_degrees[v as usize],
                        Direction::In => meta.in_degrees[v as usize],
                    };
                    prop_assert_eq!(csr.degree(v), expected);
                }
            }
        }

        #[test]
        fn scan_matches_brute_force((n, edges) in arb_edges(), t_a in 0u64..50, span in 0u64..60) {
            let w = QueryWindow::new(t_a, t_a + span).unwrap();
            let csr = TemporalCsr::build(&edges, n, Direction::Out).unwrap();
            for v in 0..n as u32 {
                let mut got: Vec<_> = csr.scan_neighbors(v, w).iter().map(|e| (e.neighbor, e.start, e.end)).collect();
                let mut want: Vec<_> = edges.iter()
                    .filter(|e| e.src == v && e.start >= w.t_a && e.end <= w.t_b)
                    .map(|e| (e.dst, e.start, e.end))
                    .collect();
                got.sort_unstable();
                want.sort_unstable();
                prop_assert_eq!(got, want);
            }
        }
    }
}
