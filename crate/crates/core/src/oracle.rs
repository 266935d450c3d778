//! Brute-force reference implementations over raw edge lists.
//!
//! Everything here is deliberately naive and sequential. Undirected inputs
//! are expanded into both arc directions, matching how the graph stores them.

use crate::algorithms::PathResult;
use crate::error::{Error, Result};
use crate::model::{Interval, OrderingPredicate, QueryWindow, TemporalEdge, VertexId};

pub const MAX_VERTICES: usize = 12;
pub const MAX_EDGES: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathMetric {
    EarliestArrival,
    /// Paths into the given vertex; values are first-edge start times.
    LatestDeparture,
    Fastest,
    ShortestDuration,
    Hops,
}

#[derive(Clone, Copy, Debug)]
struct Arc {
    src: usize,
    dst: usize,
    iv: Interval,
}

fn arcs(edges: &[TemporalEdge], directed: bool, w: QueryWindow) -> Vec<Arc> {
    let mut out = Vec::new();
    for e in edges.iter().filter(|e| w.contains(e.start, e.end)) {
        let iv = e.interval();
        out.push(Arc {
            src: e.src as usize,
            dst: e.dst as usize,
            iv,
        });
        if !directed {
            out.push(Arc {
                src: e.dst as usize,
                dst: e.src as usize,
                iv,
            });
        }
    }
    out
}

fn guard(edges: &[TemporalEdge], n: usize) -> Result<()> {
    if n > MAX_VERTICES || edges.len() > MAX_EDGES {
        return Err(Error::OracleTooLarge {
            num_vertices: n,
            num_edges: edges.len(),
        });
    }
    Ok(())
}

fn check_source(source: VertexId, n: usize) -> Result<()> {
    if source as usize >= n {
        return Err(Error::VertexOutOfRange {
            vertex: source,
            num_vertices: n,
        });
    }
    Ok(())
}

fn init_value(metric: PathMetric, w: QueryWindow) -> u64 {
    match metric {
        PathMetric::EarliestArrival => w.t_a,
        PathMetric::LatestDeparture => w.t_b,
        _ => 0,
    }
}

/// Optimum per vertex over all simple temporal paths inside `w`. For
/// `LatestDeparture`, `source` is the path target.
pub fn enumerate_paths(
    edges: &[TemporalEdge],
    n: usize,
    directed: bool,
    source: VertexId,
    w: QueryWindow,
    ord: OrderingPredicate,
    metric: PathMetric,
) -> Result<PathResult> {
    guard(edges, n)?;
    check_source(source, n)?;
    let arcs = arcs(edges, directed, w);
    let mut best: PathResult = vec![None; n];
    let mut on_path = vec![false; n];
    on_path[source as usize] = true;
    let mut stack: Vec<Arc> = Vec::new();
    if metric == PathMetric::LatestDeparture {
        extend_backward(&arcs, ord, source as usize, &mut on_path, &mut stack, &mut best);
    } else {
        extend_forward(&arcs, ord, metric, source as usize, &mut on_path, &mut stack, &mut best);
    }
    best[source as usize] = Some(init_value(metric, w));
    Ok(best)
}

fn extend_forward(
    arcs: &[Arc],
    ord: OrderingPredicate,
    metric: PathMetric,
    at: usize,
    on_path: &mut [bool],
    stack: &mut Vec<Arc>,
    best: &mut PathResult,
) {
    for a in arcs {
        if a.src != at || on_path[a.dst] {
            continue;
        }
        if let Some(prev) = stack.last() {
            if !ord.holds(prev.iv, a.iv) {
                continue;
            }
        }
        stack.push(*a);
        let value = match metric {
            PathMetric::EarliestArrival => a.iv.end,
            PathMetric::Fastest => a.iv.end - stack[0].iv.start,
            PathMetric::ShortestDuration => stack.iter().map(|x| x.iv.duration()).sum(),
            PathMetric::Hops => stack.len() as u64,
            PathMetric::LatestDeparture => unreachable!(),
        };
        let slot = &mut best[a.dst];
        *slot = Some(slot.map_or(value, |b| b.min(value)));
        on_path[a.dst] = true;
        extend_forward(arcs, ord, metric, a.dst, on_path, stack, best);
        on_path[a.dst] = false;
        stack.pop();
    }
}

/// Grows paths backward from the target; `stack` holds arcs from the target
/// outward, so its last element is the current first edge.
fn extend_backward(
    arcs: &[Arc],
    ord: OrderingPredicate,
    at: usize,
    on_path: &mut [bool],
    stack: &mut Vec<Arc>,
    best: &mut PathResult,
) {
    for a in arcs {
        if a.dst != at || on_path[a.src] {
            continue;
        }
        if let Some(next) = stack.last() {
            if !ord.holds(a.iv, next.iv) {
                continue;
            }
        }
        stack.push(*a);
        let slot = &mut best[a.src];
        *slot = Some(slot.map_or(a.iv.start, |b| b.max(a.iv.start)));
        on_path[a.src] = true;
        extend_backward(arcs, ord, a.src, on_path, stack, best);
        on_path[a.src] = false;
        stack.pop();
    }
}

/// Optimum per vertex over temporal walks (vertices may repeat), by
/// Bellman-Ford relaxation over pairs of arcs. No size guard.
pub fn walk_paths(
    edges: &[TemporalEdge],
    n: usize,
    directed: bool,
    source: VertexId,
    w: QueryWindow,
    ord: OrderingPredicate,
    metric: PathMetric,
) -> Result<PathResult> {
    check_source(source, n)?;
    let arcs = arcs(edges, directed, w);
    let s = source as usize;
    let mut best: PathResult = vec![None; n];
    if metric == PathMetric::LatestDeparture {
        let mut reach: Vec<bool> = arcs.iter().map(|a| a.dst == s).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..arcs.len() {
                if reach[i] {
                    continue;
                }
                if (0..arcs.len()).any(|j| reach[j] && arcs[i].dst == arcs[j].src && ord.holds(arcs[i].iv, arcs[j].iv)) {
                    reach[i] = true;
                    changed = true;
                }
            }
        }
        for (a, _) in arcs.iter().zip(&reach).filter(|(_, &r)| r) {
            let slot = &mut best[a.src];
            *slot = Some(slot.map_or(a.iv.start, |b| b.max(a.iv.start)));
        }
    } else {
        // Per-arc label: smaller is better; for Fastest it is the negated
        // first start, offset to stay unsigned.
        let init = |a: &Arc| match metric {
            PathMetric::EarliestArrival => 0,
            PathMetric::Fastest => u64::MAX - a.iv.start,
            PathMetric::ShortestDuration => a.iv.duration(),
            PathMetric::Hops => 1,
            PathMetric::LatestDeparture => unreachable!(),
        };
        let extend = |prev: u64, a: &Arc| match metric {
            PathMetric::EarliestArrival | PathMetric::Fastest => prev,
            PathMetric::ShortestDuration => prev + a.iv.duration(),
            PathMetric::Hops => prev + 1,
            PathMetric::LatestDeparture => unreachable!(),
        };
        let mut label: Vec<Option<u64>> = arcs.iter().map(|a| (a.src == s).then(|| init(a))).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..arcs.len() {
                for j in 0..arcs.len() {
                    let Some(prev) = label[j] else { continue };
                    if arcs[j].dst != arcs[i].src || !ord.holds(arcs[j].iv, arcs[i].iv) {
                        continue;
                    }
                    let cand = extend(prev, &arcs[i]);
                    if label[i].is_none_or(|x| cand < x) {
                        label[i] = Some(cand);
                        changed = true;
                    }
                }
            }
        }
        for (a, l) in arcs.iter().zip(&label) {
            let Some(l) = *l else { continue };
            let value = match metric {
                PathMetric::EarliestArrival => a.iv.end,
                PathMetric::Fastest => a.iv.end - (u64::MAX - l),
                _ => l,
            };
            let slot = &mut best[a.dst];
            *slot = Some(slot.map_or(value, |b| b.min(value)));
        }
    }
    best[s] = Some(init_value(metric, w));
    Ok(best)
}

/// Betweenness by enumerating every simple temporal path from each source
/// and keeping the shortest-duration ones per target.
pub fn betweenness(
    edges: &[TemporalEdge],
    n: usize,
    directed: bool,
    w: QueryWindow,
    ord: OrderingPredicate,
    sources: &[VertexId],
) -> Result<Vec<f64>> {
    guard(edges, n)?;
    let arcs = arcs(edges, directed, w);
    let mut bc = vec![0.0; n];
    for &s in sources {
        check_source(s, n)?;
        let mut paths: Vec<(u64, Vec<usize>)> = Vec::new();
        let mut on_path = vec![false; n];
        on_path[s as usize] = true;
        let mut walk = vec![s as usize];
        let mut last: Vec<Interval> = Vec::new();
        collect_paths(&arcs, ord, &mut on_path, &mut walk, &mut last, 0, &mut paths);
        for t in 0..n {
            let to_t: Vec<&(u64, Vec<usize>)> = paths.iter().filter(|(_, p)| *p.last().unwrap() == t).collect();
            let Some(min) = to_t.iter().map(|(d, _)| *d).min() else { continue };
            let shortest: Vec<&Vec<usize>> = to_t.iter().filter(|(d, _)| *d == min).map(|(_, p)| p).collect();
            let sigma = shortest.len() as f64;
            for p in shortest {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / sigma;
                }
            }
        }
    }
    Ok(bc)
}

fn collect_paths(
    arcs: &[Arc],
    ord: OrderingPredicate,
    on_path: &mut [bool],
    walk: &mut Vec<usize>,
    last: &mut Vec<Interval>,
    dist: u64,
    out: &mut Vec<(u64, Vec<usize>)>,
) {
    let at = *walk.last().unwrap();
    for a in arcs {
        if a.src != at || on_path[a.dst] {
            continue;
        }
        if last.last().is_some_and(|&prev| !ord.holds(prev, a.iv)) {
            continue;
        }
        let d = dist + a.iv.duration();
        walk.push(a.dst);
        last.push(a.iv);
        on_path[a.dst] = true;
        out.push((d, walk.clone()));
        collect_paths(arcs, ord, on_path, walk, last, d, out);
        on_path[a.dst] = false;
        last.pop();
        walk.pop();
    }
}

/// Component labels (smallest member id) by union-find over edges in `w`.
pub fn connected_components(edges: &[TemporalEdge], n: usize, w: QueryWindow) -> Vec<VertexId> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for e in edges.iter().filter(|e| w.contains(e.start, e.end)) {
        let a = find(&mut parent, e.src as usize);
        let b = find(&mut parent, e.dst as usize);
        // Union toward the smaller root keeps roots equal to component minima.
        if a < b {
            parent[b] = a;
        } else {
            parent[a] = b;
        }
    }
    (0..n).map(|v| find(&mut parent, v) as VertexId).collect()
}

/// Membership flags of the `k`-core, peeling one vertex at a time.
pub fn k_core(edges: &[TemporalEdge], n: usize, w: QueryWindow, k: usize) -> Vec<bool> {
    let inside: Vec<&TemporalEdge> = edges
        .iter()
        .filter(|e| w.contains(e.start, e.end) && e.src != e.dst)
        .collect();
    let mut alive = vec![true; n];
    loop {
        let mut deg = vec![0usize; n];
        for e in &inside {
            if alive[e.src as usize] && alive[e.dst as usize] {
                deg[e.src as usize] += 1;
                deg[e.dst as usize] += 1;
            }
        }
        match (0..n).find(|&v| alive[v] && deg[v] < k) {
            Some(v) => alive[v] = false,
            None => return alive,
        }
    }
}

/// Power iteration with an explicit dense transition matrix.
pub fn pagerank(edges: &[TemporalEdge], n: usize, directed: bool, w: QueryWindow, iterations: usize, damping: f64) -> Vec<f64> {
    let arcs = arcs(edges, directed, w);
    let mut m = vec![vec![0.0f64; n]; n];
    let mut out_deg = vec![0usize; n];
    for a in &arcs {
        out_deg[a.src] += 1;
    }
    for a in &arcs {
        m[a.dst][a.src] += 1.0 / out_deg[a.src] as f64;
    }
    let nf = n as f64;
    let mut pr = vec![1.0 / nf; n];
    for _ in 0..iterations {
        let dangling: f64 = (0..n).filter(|&u| out_deg[u] == 0).map(|u| pr[u]).sum();
        pr = (0..n)
            .map(|v| {
                let inflow: f64 = (0..n).map(|u| m[v][u] * pr[u]).sum();
                (1.0 - damping) / nf + damping * (inflow + dangling / nf)
            })
            .collect();
    }
    pr
}
