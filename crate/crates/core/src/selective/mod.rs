//! Selective indexing: which vertices get a TGER, and which access path each
//! indexed vertex takes for a given window.

mod cost;
mod histogram;

use rayon::prelude::*;

pub use cost::{
    cost_scan, cost_tger, fit_constants, AccessDecision, AccessMethod, CostModelParams, TimingSample,
};
pub use histogram::{DensityHistogram, BUCKETS_PER_DIM};

use crate::error::{Error, Result};
use crate::model::{Interval, QueryWindow, VertexId};
use crate::tcsr::{Direction, TemporalCsr};
use crate::tger::{HeapMode, IndexAxes, TgerIndex};

pub const DEFAULT_INDEX_CUTOFF: usize = 2048;

/// Index plus estimator for one vertex in one direction. TGER payloads are
/// offsets into the vertex's CSR segment.
#[derive(Clone, Debug)]
pub struct VertexIndex {
    pub tger: TgerIndex<u32>,
    pub histogram: DensityHistogram,
}

impl VertexIndex {
    pub fn build(csr: &TemporalCsr, v: VertexId) -> Self {
        let seg = csr.segment(v);
        let starts = &csr.starts()[seg.clone()];
        let ends = &csr.ends()[seg];
        let items = starts
            .iter()
            .zip(ends)
            .enumerate()
            .map(|(i, (&s, &e))| (Interval::new(s, e), i as u32))
            .collect();
        Self {
            tger: TgerIndex::build(items, HeapMode::MaxHeap, IndexAxes::StartPriority),
            histogram: DensityHistogram::build(starts, ends),
        }
    }
}

/// Indexes of one direction, with a dense vertex-to-slot table so lookups
/// on the traversal hot path are a single array read.
#[derive(Clone, Debug, Default)]
struct DirectionIndexes {
    slots: Vec<u32>,
    /// Sorted by vertex id.
    indexes: Vec<(VertexId, VertexIndex)>,
}

const NO_SLOT: u32 = u32::MAX;

impl DirectionIndexes {
    fn build(csr: &TemporalCsr, cutoff: usize) -> Self {
        let indexes: Vec<(VertexId, VertexIndex)> = (0..csr.num_vertices() as VertexId)
            .into_par_iter()
            .filter(|&v| csr.degree(v) >= cutoff)
            .map(|v| (v, VertexIndex::build(csr, v)))
            .collect();
        let mut slots = Vec::new();
        if !indexes.is_empty() {
            slots = vec![NO_SLOT; csr.num_vertices()];
            for (i, (v, _)) in indexes.iter().enumerate() {
                slots[*v as usize] = i as u32;
            }
        }
        Self { slots, indexes }
    }

    #[inline]
    fn get(&self, v: VertexId) -> Option<&VertexIndex> {
        match self.slots.get(v as usize) {
            Some(&slot) if slot != NO_SLOT => Some(&self.indexes[slot as usize].1),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VertexIndexRegistry {
    cutoff: usize,
    out_indexes: DirectionIndexes,
    in_indexes: DirectionIndexes,
}

impl VertexIndexRegistry {
    /// Indexes every vertex whose degree in a direction is at least `cutoff`.
    pub fn build(out_csr: &TemporalCsr, in_csr: &TemporalCsr, cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidArgument("index cutoff must be at least 1".into()));
        }
        Ok(Self {
            cutoff,
            out_indexes: DirectionIndexes::build(out_csr, cutoff),
            in_indexes: DirectionIndexes::build(in_csr, cutoff),
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn side(&self, dir: Direction) -> &DirectionIndexes {
        match dir {
            Direction::Out => &self.out_indexes,
            Direction::In => &self.in_indexes,
        }
    }

    #[inline]
    pub fn get(&self, dir: Direction, v: VertexId) -> Option<&VertexIndex> {
        self.side(dir).get(v)
    }

    #[inline]
    pub fn is_indexed(&self, dir: Direction, v: VertexId) -> bool {
        self.get(dir, v).is_some()
    }

    pub fn len(&self, dir: Direction) -> usize {
        self.side(dir).indexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out_indexes.indexes.is_empty() && self.in_indexes.indexes.is_empty()
    }

    /// Indexed vertices in ascending id order.
    pub fn indexed_vertices(&self, dir: Direction) -> Vec<VertexId> {
        self.side(dir).indexes.iter().map(|(v, _)| *v).collect()
    }

    pub fn estimate(&self, dir: Direction, v: VertexId, w: QueryWindow) -> Option<f64> {
        self.get(dir, v).map(|ix| ix.histogram.estimate(w))
    }

    /// Unindexed vertices scan; indexed ones use the TGER iff the estimated
    /// selectivity is at most `theta_sel`.
    pub fn choose(&self, dir: Direction, v: VertexId, w: QueryWindow, params: &CostModelParams) -> AccessDecision {
        match self.get(dir, v) {
            None => AccessDecision::unindexed(),
            Some(ix) => AccessDecision::from_estimate(ix.histogram.estimate(w), ix.tger.len(), params.theta_sel),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TemporalEdge;

    fn csrs(edges: &[TemporalEdge], n: usize) -> (TemporalCsr, TemporalCsr) {
        (
            TemporalCsr::build(edges, n, Direction::Out).unwrap(),
            TemporalCsr::build(edges, n, Direction::In).unwrap(),
        )
    }

    fn star(center: VertexId, leaves: u32, fan_out: bool) -> Vec<TemporalEdge> {
        (0..leaves)
            .map(|i| {
                let (s, d) = if fan_out { (center, i + 1) } else { (i + 1, center) };
                TemporalEdge::new(s, d, i as u64, i as u64 + 3)
            })
            .collect()
    }

    #[test]
    fn empty_when_all_below_cutoff() {
        let edges = star(0, 5, true);
        let (o, i) = csrs(&edges, 6);
        let r = VertexIndexRegistry::build(&o, &i, 6).unwrap();
        assert!(r.is_empty());
        assert!(VertexIndexRegistry::build(&o, &i, 0).is_err());
    }

    #[test]
    fn cutoff_is_inclusive_and_per_direction() {
        let edges = star(0, 5, true);
        let (o, i) = csrs(&edges, 6);
        let r = VertexIndexRegistry::build(&o, &i, 5).unwrap();
        assert_eq!(r.indexed_vertices(Direction::Out), vec![0]);
        assert!(r.indexed_vertices(Direction::In).is_empty());
        let ix = r.get(Direction::Out, 0).unwrap();
        assert_eq!(ix.tger.len(), 5);
        assert_eq!(ix.histogram.total(), 5);
    }

    #[test]
    fn indexed_set_matches_degree_count() {
        let mut edges = Vec::new();
        let n = 40u32;
        for v in 0..n {
            for j in 0..(v % 13) {
                edges.push(TemporalEdge::new(v, (v + j + 1) % n, j as u64, j as u64 + 1));
            }
        }
        let (o, i) = csrs(&edges, n as usize);
        let cutoff = 7;
        let r = VertexIndexRegistry::build(&o, &i, cutoff).unwrap();
        for dir in [Direction::Out, Direction::In] {
            let mut deg = vec![0usize; n as usize];
            for e in &edges {
                deg[match dir {
                    Direction::Out => e.src,
                    Direction::In => e.dst,
                } as usize] += 1;
            }
            let want: Vec<VertexId> = (0..n).filter(|&v| deg[v as usize] >= cutoff).collect();
            assert_eq!(r.indexed_vertices(dir), want);
        }
    }

    #[test]
    fn choose_follows_selectivity() {
        let edges = star(0, 1000, true);
        let (o, i) = csrs(&edges, 1001);
        let r = VertexIndexRegistry::build(&o, &i, 100).unwrap();
        let p = CostModelParams::default();
        let all = QueryWindow::new(0, 2000).unwrap();
        let d = r.choose(Direction::Out, 0, all, &p);
        assert_eq!(d.method, AccessMethod::Scan);
        assert!((d.beta_hat.unwrap() - 1.0).abs() < 1e-9);
        let recent = QueryWindow::new(950, 2000).unwrap();
        assert_eq!(r.choose(Direction::Out, 0, recent, &p).method, AccessMethod::Tger);
        assert_eq!(r.choose(Direction::Out, 5, recent, &p), AccessDecision::unindexed());
    }
}
