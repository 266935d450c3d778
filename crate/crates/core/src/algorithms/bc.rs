//! Betweenness centrality over shortest-duration temporal paths.
//!
//! Per source, shortest-duration edge labels give `dist(e)` for every
//! reachable edge. Edge `a` feeds edge `c` when `c` may follow `a` and
//! `dist(a) + dur(c) = dist(c)`; to keep that relation acyclic with
//! zero-duration edges, `a` must also precede `c` in `(dist, start, end,
//! position)` order. Path counts `sigma` flow forward over this DAG and
//! dependencies flow back, Brandes style, one dist level at a time.
//!
//! Scores are unnormalized; `sigma` saturates at `2^63 - 1`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::labels::{edge_labels, LabelMetric};
use crate::engine::TemporalGraph;
use crate::error::Result;
use crate::model::{Interval, OrderingPredicate, QueryWindow, VertexId};
use crate::tcsr::Direction;

pub const SIGMA_CAP: u64 = (1 << 63) - 1;
/// Graphs with more vertices use only the top out-degree sources.
pub const EXACT_SOURCE_LIMIT: usize = 1000;
pub const DEFAULT_TOP_SOURCES: usize = 100;

/// The `k` vertices of largest out-degree, ties broken by smaller id.
pub fn top_out_degree_sources(g: &TemporalGraph, k: usize) -> Vec<VertexId> {
    let csr = g.csr(Direction::Out);
    let mut vs: Vec<VertexId> = (0..g.num_vertices() as VertexId).collect();
    vs.sort_by_key(|&v| (std::cmp::Reverse(csr.degree(v)), v));
    vs.truncate(k);
    vs
}

/// Exact over all sources for up to 1000 vertices, otherwise from the 100
/// highest out-degree sources.
pub fn betweenness(g: &TemporalGraph, w: QueryWindow) -> Result<Vec<f64>> {
    let sources = if g.num_vertices() <= EXACT_SOURCE_LIMIT {
        (0..g.num_vertices() as VertexId).collect()
    } else {
        top_out_degree_sources(g, DEFAULT_TOP_SOURCES)
    };
    betweenness_from(g, w, &sources)
}

/// Sum of single-source dependencies over `sources`, added in the given
/// order.
pub fn betweenness_from(g: &TemporalGraph, w: QueryWindow, sources: &[VertexId]) -> Result<Vec<f64>> {
    for &s in sources {
        g.check_vertex(s)?;
    }
    let csr = g.csr(Direction::Out);
    let owner: Vec<VertexId> = (0..g.num_vertices() as VertexId)
        .into_par_iter()
        .flat_map_iter(|v| std::iter::repeat_n(v, csr.degree(v)))
        .collect();
    let per_source: Vec<Vec<(VertexId, f64)>> = sources
        .par_iter()
        .map(|&s| single_source(g, &owner, s, w))
        .collect::<Result<_>>()?;
    let mut bc = vec![0.0; g.num_vertices()];
    for contrib in per_source {
        for (v, x) in contrib {
            bc[v as usize] += x;
        }
    }
    Ok(bc)
}

#[derive(Clone, Copy)]
struct Reached {
    tail: VertexId,
    head: VertexId,
    iv: Interval,
    dist: u64,
}

impl Reached {
    fn dur(&self) -> u64 {
        self.iv.end - self.iv.start
    }
}

/// Edges grouped under one key, sorted by a time coordinate, with running
/// sums for threshold queries.
struct Group {
    members: Vec<usize>,
    time: Vec<u64>,
    prefix: Vec<u64>,
    suffix: Vec<f64>,
}

fn single_source(g: &TemporalGraph, owner: &[VertexId], s: VertexId, w: QueryWindow) -> Result<Vec<(VertexId, f64)>> {
    let ord = g.ordering();
    let csr = g.csr(Direction::Out);
    let labels = edge_labels(g, s, w, Direction::Out, LabelMetric::Duration)?;
    let mut edges: Vec<(usize, Reached)> = labels
        .reached()
        .map(|(pos, dist)| {
            (
                pos,
                Reached {
                    tail: owner[pos],
                    head: csr.neighbors()[pos],
                    iv: Interval::new(csr.starts()[pos], csr.ends()[pos]),
                    dist,
                },
            )
        })
        .collect();
    edges.sort_unstable_by_key(|(pos, r)| (r.dist, r.iv.start, r.iv.end, *pos));
    let e: Vec<Reached> = edges.into_iter().map(|(_, r)| r).collect();
    let m = e.len();

    let mut best: HashMap<VertexId, u64> = HashMap::new();
    for r in &e {
        let d = best.entry(r.head).or_insert(r.dist);
        *d = (*d).min(r.dist);
    }
    let follows = |a: &Reached, c: &Reached| ord.holds(a.iv, c.iv);
    let levels: Vec<(usize, usize)> = {
        let mut out = Vec::new();
        let mut i = 0;
        while i < m {
            let j = i + e[i..].partition_point(|r| r.dist == e[i].dist);
            out.push((i, j));
            i = j;
        }
        out
    };

    // Forward: path counts.
    let mut sigma = vec![0u64; m];
    let mut into: HashMap<(VertexId, u64), Group> = HashMap::new();
    for &(lo, hi) in &levels {
        let level_dist = e[lo].dist;
        let mut same_level: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for c in lo..hi {
            let rc = &e[c];
            let mut count = u64::from(rc.tail == s && rc.dist == rc.dur());
            if rc.dur() > 0 {
                if let Some(grp) = into.get(&(rc.tail, rc.dist - rc.dur())) {
                    count = count.saturating_add(count_before(grp, &e, &sigma, rc, ord));
                }
            } else if let Some(cands) = same_level.get(&rc.tail) {
                for &a in cands {
                    if follows(&e[a], rc) {
                        count = count.saturating_add(sigma[a]);
                    }
                }
            }
            sigma[c] = count.min(SIGMA_CAP);
            same_level.entry(rc.head).or_default().push(c);
        }
        for (head, members) in same_level {
            into.insert((head, level_dist), count_group(members, &e, &sigma));
        }
    }

    let mut sigma_t: HashMap<VertexId, f64> = HashMap::new();
    for (i, r) in e.iter().enumerate() {
        if r.head != s && r.dist == best[&r.head] {
            *sigma_t.entry(r.head).or_insert(0.0) += sigma[i] as f64;
        }
    }
    let own = |r: &Reached| {
        if r.head != s && r.dist == best[&r.head] {
            1.0 / sigma_t[&r.head]
        } else {
            0.0
        }
    };

    // Backward: dependencies. `pending` collects edges with positive
    // duration by (tail, dist - dur); each key is complete once the sweep
    // reaches that dist.
    let mut dep = vec![0.0f64; m];
    let mut pending: HashMap<(VertexId, u64), Vec<usize>> = HashMap::new();
    let mut out_groups: HashMap<(VertexId, u64), Group> = HashMap::new();
    for &(lo, hi) in levels.iter().rev() {
        let level_dist = e[lo].dist;
        let mut same_level: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for b in (lo..hi).rev() {
            let rb = &e[b];
            let key = (rb.head, level_dist);
            if let Some(members) = pending.remove(&key) {
                out_groups.insert(key, dependency_group(members, &e, &dep));
            }
            let mut total = own(rb);
            if let Some(grp) = out_groups.get(&key) {
                total += dependency_after(grp, &e, &dep, rb, ord);
            }
            if let Some(cands) = same_level.get(&rb.head) {
                for &c in cands {
                    if follows(rb, &e[c]) {
                        total += dep[c];
                    }
                }
            }
            dep[b] = total;
            if rb.dur() == 0 {
                same_level.entry(rb.tail).or_default().push(b);
            } else {
                pending.entry((rb.tail, rb.dist - rb.dur())).or_default().push(b);
            }
        }
    }

    Ok(e.iter()
        .enumerate()
        .filter(|(_, r)| r.head != s)
        .map(|(i, r)| (r.head, sigma[i] as f64 * (dep[i] - own(r))))
        .filter(|&(_, x)| x != 0.0)
        .collect())
}

/// Sorts `members` by `time`.
fn sorted_group(mut members: Vec<usize>, time: impl Fn(usize) -> u64) -> (Vec<usize>, Vec<u64>) {
    members.sort_unstable_by_key(|&i| (time(i), i));
    let t = members.iter().map(|&i| time(i)).collect();
    (members, t)
}

/// Members sorted by end time, with saturating prefix sums of `sigma`.
fn count_group(members: Vec<usize>, e: &[Reached], sigma: &[u64]) -> Group {
    let (members, time) = sorted_group(members, |i| e[i].iv.end);
    let mut prefix = Vec::with_capacity(members.len() + 1);
    prefix.push(0u64);
    for &i in &members {
        prefix.push(prefix.last().unwrap().saturating_add(sigma[i]));
    }
    Group {
        members,
        time,
        prefix,
        suffix: Vec::new(),
    }
}

/// Members sorted by start time, with suffix sums of `dep`.
fn dependency_group(members: Vec<usize>, e: &[Reached], dep: &[f64]) -> Group {
    let (members, time) = sorted_group(members, |i| e[i].iv.start);
    let mut suffix = vec![0.0; members.len() + 1];
    for k in (0..members.len()).rev() {
        suffix[k] = suffix[k + 1] + dep[members[k]];
    }
    Group {
        members,
        time,
        prefix: Vec::new(),
        suffix,
    }
}

/// Total count of members that `c` may follow.
fn count_before(grp: &Group, e: &[Reached], sigma: &[u64], c: &Reached, ord: OrderingPredicate) -> u64 {
    match ord {
        OrderingPredicate::Succeeds => grp.prefix[grp.time.partition_point(|&t| t <= c.iv.start)],
        OrderingPredicate::StrictlySucceeds => grp.prefix[grp.time.partition_point(|&t| t < c.iv.start)],
        OrderingPredicate::Overlaps => grp
            .members
            .iter()
            .filter(|&&a| ord.holds(e[a].iv, c.iv))
            .fold(0u64, |acc, &a| acc.saturating_add(sigma[a])),
    }
}

/// Total dependency of members that may follow `b`.
fn dependency_after(grp: &Group, e: &[Reached], dep: &[f64], b: &Reached, ord: OrderingPredicate) -> f64 {
    match ord {
        OrderingPredicate::Succeeds => grp.suffix[grp.time.partition_point(|&t| t < b.iv.end)],
        OrderingPredicate::StrictlySucceeds => grp.suffix[grp.time.partition_point(|&t| t <= b.iv.end)],
        OrderingPredicate::Overlaps => grp
            .members
            .iter()
            .filter(|&&c| ord.holds(b.iv, e[c].iv))
            .map(|&c| dep[c])
            .sum(),
    }
}
