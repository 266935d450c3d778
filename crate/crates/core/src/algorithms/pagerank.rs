use rayon::prelude::*;

use crate::engine::TemporalGraph;
use crate::error::{Error, Result};
use crate::model::{QueryWindow, VertexId};
use crate::tcsr::Direction;

const SUM_CHUNK: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct PageRankResult {
    pub scores: Vec<f64>,
    /// L1 distance between successive iterates, one per iteration.
    pub deltas: Vec<f64>,
}

/// Sum with a fixed association order, independent of the thread count.
fn det_sum(xs: &[f64]) -> f64 {
    let partial: Vec<f64> = xs.par_chunks(SUM_CHUNK).map(|c| c.iter().sum()).collect();
    partial.iter().sum()
}

/// Power-iteration PageRank on the subgraph of edges inside `w`. Dangling
/// mass is spread uniformly.
pub fn pagerank(g: &TemporalGraph, w: QueryWindow, iterations: usize, damping: f64) -> Result<PageRankResult> {
    if iterations < 1 {
        return Err(Error::InvalidArgument("pagerank needs at least one iteration".into()));
    }
    if !(0.0..=1.0).contains(&damping) {
        return Err(Error::InvalidArgument(format!("damping must lie in [0, 1], got {damping}")));
    }
    let n = g.num_vertices();
    if n == 0 {
        return Ok(PageRankResult {
            scores: Vec::new(),
            deltas: vec![0.0; iterations],
        });
    }
    let out_deg: Vec<u64> = (0..n as VertexId)
        .into_par_iter()
        .map(|v| {
            let mut d = 0;
            g.for_each_edge(Direction::Out, v, w, |_| d += 1);
            d
        })
        .collect();
    // Windowed in-neighbors in layout order, so every sum has a fixed order.
    let in_csr = g.csr(Direction::In);
    let lists: Vec<Vec<VertexId>> = (0..n as VertexId)
        .into_par_iter()
        .map(|v| g.par_edges(Direction::In, v, w, |pos| Some(in_csr.neighbors()[pos])))
        .collect();

    let nf = n as f64;
    let mut pr = vec![1.0 / nf; n];
    let mut deltas = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let contrib: Vec<f64> = pr
            .par_iter()
            .zip(&out_deg)
            .map(|(&p, &d)| if d > 0 { p / d as f64 } else { 0.0 })
            .collect();
        let dangling: Vec<f64> = pr
            .par_iter()
            .zip(&out_deg)
            .map(|(&p, &d)| if d == 0 { p } else { 0.0 })
            .collect();
        let base = (1.0 - damping) / nf + damping * det_sum(&dangling) / nf;
        let next: Vec<f64> = lists
            .par_iter()
            .map(|srcs| base + damping * srcs.iter().map(|&u| contrib[u as usize]).sum::<f64>())
            .collect();
        let diff: Vec<f64> = next.par_iter().zip(&pr).map(|(a, b)| (a - b).abs()).collect();
        deltas.push(det_sum(&diff));
        pr = next;
    }
    Ok(PageRankResult { scores: pr, deltas })
}
