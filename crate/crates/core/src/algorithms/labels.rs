//! Path metrics over per-edge labels.
//!
//! The label of an edge is the best metric value of any temporal path from
//! the origin whose last edge it is. Whether a path can be extended depends
//! only on its last edge, so labels relax like Bellman-Ford over the line
//! graph: each round, vertices whose incoming labels improved ("anchors")
//! offer those labels to their windowed out-edges. All keys are encoded so
//! that smaller is better and `u64::MAX` means unreached.
//!
//! Rounds are deterministic: candidates are collected, then applied, and the
//! next frontier is grouped in sorted order.

use rayon::prelude::*;

use super::PathResult;
use crate::engine::TemporalGraph;
use crate::error::{Error, Result};
use crate::model::{Interval, OrderingPredicate, QueryWindow, Timestamp, VertexId};
use crate::tcsr::{Direction, TemporalCsr};

pub const UNREACHED: u64 = u64::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelMetric {
    /// Key 0 for every reachable edge.
    Reach,
    /// Number of edges.
    Hops,
    /// Sum of `end - start`.
    Duration,
    /// Sum of weights, as `f64` bits (weights must be non-negative).
    WeightedDuration,
    /// Latest start of the path's first edge, as `u64::MAX - 1 - start`.
    LatestFirstStart,
}

impl LabelMetric {
    #[inline]
    fn init(self, csr: &TemporalCsr, pos: usize) -> u64 {
        match self {
            LabelMetric::Reach => 0,
            LabelMetric::Hops => 1,
            LabelMetric::Duration => csr.ends()[pos] - csr.starts()[pos],
            LabelMetric::WeightedDuration => csr.weight(pos).to_bits(),
            LabelMetric::LatestFirstStart => UNREACHED - 1 - csr.starts()[pos],
        }
    }

    /// Key of `prev` extended by the edge at `pos`. Monotone in `prev`.
    #[inline]
    fn extend(self, prev: u64, csr: &TemporalCsr, pos: usize) -> u64 {
        match self {
            LabelMetric::Reach | LabelMetric::LatestFirstStart => prev,
            LabelMetric::Hops => prev.saturating_add(1).min(UNREACHED - 1),
            LabelMetric::Duration => prev
                .saturating_add(csr.ends()[pos] - csr.starts()[pos])
                .min(UNREACHED - 1),
            LabelMetric::WeightedDuration => (f64::from_bits(prev) + csr.weight(pos)).to_bits(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Anchor {
    iv: Interval,
    key: u64,
}

/// Incoming labels of one frontier vertex. `None` marks the path origin.
struct Anchors {
    list: Option<Vec<Anchor>>,
    /// Prefix minima of keys, for the sorted-by-end fast path.
    prefix_min: Vec<u64>,
}

/// Final labels, indexed by position in the layout of `dir`.
#[derive(Clone, Debug)]
pub struct EdgeLabels {
    pub dir: Direction,
    /// Bitwise complement of each key, so the untouched table is all zero
    /// and can be allocated lazily.
    inverted: Vec<u64>,
    /// Labelled positions, ascending.
    reached: Vec<usize>,
}

impl EdgeLabels {
    #[inline]
    pub fn key(&self, pos: usize) -> u64 {
        !self.inverted[pos]
    }

    /// `(position, key)` of every labelled edge in ascending position order.
    pub fn reached(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.reached.iter().map(|&pos| (pos, self.key(pos)))
    }
}

/// Relaxes edge labels from `origin`. `Out` follows paths forward from the
/// origin; `In` follows them backward into it (reachability only).
pub fn edge_labels(
    g: &TemporalGraph,
    origin: VertexId,
    w: QueryWindow,
    dir: Direction,
    metric: LabelMetric,
) -> Result<EdgeLabels> {
    g.check_vertex(origin)?;
    if dir == Direction::In && metric != LabelMetric::Reach {
        return Err(Error::InvalidArgument("backward labels support reachability only".into()));
    }
    if metric == LabelMetric::WeightedDuration {
        if let Some(ws) = g.csr(dir).weights() {
            if ws.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
                return Err(Error::Domain("weighted durations need finite non-negative weights".into()));
            }
        }
    }
    let csr = g.csr(dir);
    let ord = g.ordering();
    // Out + succession: anchors sorted by end admit a prefix of the list.
    let threshold = dir == Direction::Out && ord.is_succession();
    let n = g.num_vertices();
    let mut inverted = vec![0u64; csr.num_edges()];
    let mut reached = Vec::new();
    let mut slot = vec![u32::MAX; n];
    let mut frontier: Vec<(VertexId, Anchors)> = vec![(
        origin,
        Anchors {
            list: None,
            prefix_min: Vec::new(),
        },
    )];

    while !frontier.is_empty() {
        for (i, (v, _)) in frontier.iter().enumerate() {
            slot[*v as usize] = i as u32;
        }
        let ids: Vec<VertexId> = frontier.iter().map(|(v, _)| *v).collect();
        let window_for = |v: VertexId| {
            let Some(list) = &frontier[slot[v as usize] as usize].1.list else {
                return Some(w);
            };
            let wins = list.iter().filter_map(|a| match dir {
                Direction::Out => ord.successor_window(a.iv, w),
                Direction::In => ord.predecessor_window(a.iv, w),
            });
            match dir {
                Direction::Out => wins.min_by_key(|x| x.t_a),
                Direction::In => wins.max_by_key(|x| x.t_b),
            }
        };
        let keys_ref = &inverted;
        let candidates = g.edge_map_collect(&ids, dir, window_for, |v, pos| {
            let anchors = &frontier[slot[v as usize] as usize].1;
            let cand = best_candidate(anchors, csr, pos, ord, dir, threshold, metric)?;
            (cand < !keys_ref[pos]).then_some((pos, cand))
        });
        for (v, _) in &frontier {
            slot[*v as usize] = u32::MAX;
        }
        if candidates.is_empty() {
            break;
        }
        for &(pos, key) in &candidates {
            if inverted[pos] == 0 {
                reached.push(pos);
            }
            inverted[pos] = !key;
        }
        frontier = next_frontier(candidates, csr, threshold);
    }
    reached.par_sort_unstable();
    Ok(EdgeLabels { dir, inverted, reached })
}

#[inline]
fn best_candidate(
    anchors: &Anchors,
    csr: &TemporalCsr,
    pos: usize,
    ord: OrderingPredicate,
    dir: Direction,
    threshold: bool,
    metric: LabelMetric,
) -> Option<u64> {
    let Some(list) = &anchors.list else {
        return Some(metric.init(csr, pos));
    };
    let cand = Interval::new(csr.starts()[pos], csr.ends()[pos]);
    let best = if threshold {
        let start = cand.start;
        let count = match ord {
            OrderingPredicate::Succeeds => list.partition_point(|a| a.iv.end <= start),
            _ => list.partition_point(|a| a.iv.end < start),
        };
        anchors.prefix_min[..count].last().copied()
    } else {
        list.iter()
            .filter(|a| match dir {
                Direction::Out => ord.holds(a.iv, cand),
                Direction::In => ord.holds(cand, a.iv),
            })
            .map(|a| a.key)
            .min()
    }?;
    Some(metric.extend(best, csr, pos))
}

fn next_frontier(mut improved: Vec<(usize, u64)>, csr: &TemporalCsr, threshold: bool) -> Vec<(VertexId, Anchors)> {
    let nbr = csr.neighbors();
    improved.par_sort_unstable_by_key(|&(pos, key)| (nbr[pos], csr.ends()[pos], key, pos));
    improved
        .chunk_by(|a, b| nbr[a.0] == nbr[b.0])
        .map(|group| {
            let list: Vec<Anchor> = group
                .iter()
                .map(|&(pos, key)| Anchor {
                    iv: Interval::new(csr.starts()[pos], csr.ends()[pos]),
                    key,
                })
                .collect();
            let prefix_min = if threshold {
                list.iter()
                    .scan(UNREACHED, |m, a| {
                        *m = (*m).min(a.key);
                        Some(*m)
                    })
                    .collect()
            } else {
                Vec::new()
            };
            (
                nbr[group[0].0],
                Anchors {
                    list: Some(list),
                    prefix_min,
                },
            )
        })
        .collect()
}

/// Per-vertex reduction over the labelled edges entering (`Out` labels) or
/// leaving (`In` labels) each vertex. `value(pos, key)` sees positions in the
/// labels' own layout; the smallest value wins, or the largest if `max`.
fn reduce_per_vertex(g: &TemporalGraph, labels: &EdgeLabels, max: bool, value: impl Fn(usize, u64) -> u64) -> PathResult {
    let far = g.csr(labels.dir).neighbors();
    let mut out: PathResult = vec![None; g.num_vertices()];
    for (pos, key) in labels.reached() {
        let x = value(pos, key);
        let slot = &mut out[far[pos] as usize];
        *slot = Some(match *slot {
            None => x,
            Some(y) if max => y.max(x),
            Some(y) => y.min(x),
        });
    }
    out
}

fn forward(g: &TemporalGraph, source: VertexId, w: QueryWindow, metric: LabelMetric) -> Result<(EdgeLabels, &TemporalCsr)> {
    Ok((edge_labels(g, source, w, Direction::Out, metric)?, g.csr(Direction::Out)))
}

/// Fewest edges on a temporal path from `source`.
pub fn temporal_bfs(g: &TemporalGraph, source: VertexId, w: QueryWindow) -> Result<PathResult> {
    let (labels, _) = forward(g, source, w, LabelMetric::Hops)?;
    let mut out = reduce_per_vertex(g, &labels, false, |_, key| key);
    out[source as usize] = Some(0);
    Ok(out)
}

/// Smallest sum of edge durations on a temporal path from `source`.
pub fn shortest_duration(g: &TemporalGraph, source: VertexId, w: QueryWindow) -> Result<PathResult> {
    let (labels, _) = forward(g, source, w, LabelMetric::Duration)?;
    let mut out = reduce_per_vertex(g, &labels, false, |_, key| key);
    out[source as usize] = Some(0);
    Ok(out)
}

/// Smallest sum of edge weights on a temporal path from `source`.
pub fn shortest_duration_weighted(g: &TemporalGraph, source: VertexId, w: QueryWindow) -> Result<Vec<Option<f64>>> {
    let (labels, _) = forward(g, source, w, LabelMetric::WeightedDuration)?;
    // Non-negative f64 bit patterns order like the values.
    let mut out: Vec<Option<f64>> = reduce_per_vertex(g, &labels, false, |_, key| key)
        .into_iter()
        .map(|k| k.map(f64::from_bits))
        .collect();
    out[source as usize] = Some(0.0);
    Ok(out)
}

/// Smallest `last end - first start` over temporal paths from `source`.
pub fn fastest_path(g: &TemporalGraph, source: VertexId, w: QueryWindow) -> Result<PathResult> {
    let (labels, csr) = forward(g, source, w, LabelMetric::LatestFirstStart)?;
    let ends = csr.ends();
    let mut out = reduce_per_vertex(g, &labels, false, |pos, key| {
        let first_start: Timestamp = UNREACHED - 1 - key;
        ends[pos] - first_start
    });
    out[source as usize] = Some(0);
    Ok(out)
}

/// Earliest arrival over walks; used for orderings where a per-vertex
/// arrival time does not summarize the path.
pub fn earliest_arrival_walk(g: &TemporalGraph, source: VertexId, w: QueryWindow) -> Result<PathResult> {
    let (labels, csr) = forward(g, source, w, LabelMetric::Reach)?;
    let ends = csr.ends();
    let mut out = reduce_per_vertex(g, &labels, false, |pos, _| ends[pos]);
    out[source as usize] = Some(w.t_a);
    Ok(out)
}

/// Latest departure toward `target` over walks.
pub fn latest_departure_walk(g: &TemporalGraph, target: VertexId, w: QueryWindow) -> Result<PathResult> {
    let labels = edge_labels(g, target, w, Direction::In, LabelMetric::Reach)?;
    let starts = g.csr(Direction::In).starts();
    let mut out = reduce_per_vertex(g, &labels, true, |pos, _| starts[pos]);
    out[target as usize] = Some(w.t_b);
    Ok(out)
}
