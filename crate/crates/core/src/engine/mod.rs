//! Frontier execution layer: graph assembly, vertex subsets and windowed
//! edge maps with per-vertex access-path selection.

pub mod atomics;
mod edge_map;
mod subset;

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use subset::{edge_subset_map, vertex_map, TemporalEdgeSubset, VertexSubset};

use crate::error::{Error, Result};
use crate::model::{GraphMeta, OrderingPredicate, QueryWindow, TemporalEdge, VertexId};
use crate::selective::{
    fit_constants, AccessDecision, AccessMethod, CostModelParams, TimingSample, VertexIndexRegistry,
    DEFAULT_INDEX_CUTOFF,
};
use crate::tcsr::{Direction, TemporalCsr, PARALLEL_SCAN_GRAIN};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AccessMode {
    /// Per-vertex cost-model decision.
    #[default]
    Auto,
    /// Every indexed vertex uses its TGER.
    #[serde(rename = "tger")]
    ForceTger,
    /// Every vertex is scanned.
    #[serde(rename = "scan")]
    ForceScan,
}

impl std::str::FromStr for AccessMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(AccessMode::Auto),
            "tger" => Ok(AccessMode::ForceTger),
            "scan" => Ok(AccessMode::ForceScan),
            other => Err(Error::InvalidArgument(format!(
                "unknown access mode '{other}' (expected auto, tger or scan)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphConfig {
    pub index_cutoff: usize,
    pub cost: CostModelParams,
    pub access_mode: AccessMode,
}

impl Default for GraphConfig {
    fn default() -> Self {
        Self {
            index_cutoff: DEFAULT_INDEX_CUTOFF,
            cost: CostModelParams::default(),
            access_mode: AccessMode::Auto,
        }
    }
}

/// Counters of neighbor-access decisions, for reports.
#[derive(Debug, Default)]
pub struct AccessStats {
    tger: AtomicU64,
    scan: AtomicU64,
    pruned: AtomicU64,
    dense_rounds: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessCounts {
    pub tger: u64,
    pub scan: u64,
    pub pruned: u64,
    pub dense_rounds: u64,
}

impl AccessStats {
    pub fn snapshot(&self) -> AccessCounts {
        AccessCounts {
            tger: self.tger.load(Ordering::Relaxed),
            scan: self.scan.load(Ordering::Relaxed),
            pruned: self.pruned.load(Ordering::Relaxed),
            dense_rounds: self.dense_rounds.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        for c in [&self.tger, &self.scan, &self.pruned, &self.dense_rounds] {
            c.store(0, Ordering::Relaxed);
        }
    }
}

/// What a calibration timer is asked to time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimingProbe {
    pub method: AccessMethod,
    pub vertex: VertexId,
    pub deg: usize,
    pub k: usize,
}

pub struct TemporalGraph {
    meta: GraphMeta,
    out_csr: TemporalCsr,
    in_csr: TemporalCsr,
    registry: VertexIndexRegistry,
    ordering: OrderingPredicate,
    config: GraphConfig,
    /// Out-layout position of the edge at each in-layout position.
    in_to_out: Vec<u32>,
    /// In-layout position of the edge at each out-layout position.
    out_to_in: Vec<u32>,
    stats: AccessStats,
}

impl TemporalGraph {
    /// Builds both layouts and the index registry. Undirected inputs are
    /// stored with every edge in both directions.
    pub fn build(
        edges: &[TemporalEdge],
        num_vertices: usize,
        directed: bool,
        ordering: OrderingPredicate,
        config: GraphConfig,
    ) -> Result<Self> {
        config.cost.validate()?;
        let meta = GraphMeta::from_edges(edges, num_vertices, directed)?;
        let symmetric;
        let stored: &[TemporalEdge] = if directed {
            edges
        } else {
            symmetric = edges
                .iter()
                .flat_map(|e| [*e, TemporalEdge { src: e.dst, dst: e.src, ..*e }])
                .collect::<Vec<_>>();
            &symmetric
        };
        if stored.len() >= u32::MAX as usize {
            return Err(Error::InvalidArgument(format!(
                "graph has {} stored edges; at most {} are supported",
                stored.len(),
                u32::MAX - 1
            )));
        }
        let (out_built, in_built) = rayon::join(
            || TemporalCsr::build_with_order(stored, num_vertices, Direction::Out),
            || TemporalCsr::build_with_order(stored, num_vertices, Direction::In),
        );
        let (out_csr, out_order) = out_built?;
        let (in_csr, in_order) = in_built?;
        let (in_to_out, out_to_in) = rayon::join(
            || compose(&in_order, &invert(&out_order)),
            || compose(&out_order, &invert(&in_order)),
        );
        let registry = VertexIndexRegistry::build(&out_csr, &in_csr, config.index_cutoff)?;
        Ok(Self {
            meta,
            out_csr,
            in_csr,
            registry,
            ordering,
            config,
            in_to_out,
            out_to_in,
            stats: AccessStats::default(),
        })
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn num_vertices(&self) -> usize {
        self.meta.num_vertices
    }

    /// Stored edges (twice the input count for undirected graphs).
    pub fn num_stored_edges(&self) -> usize {
        self.out_csr.num_edges()
    }

    pub fn is_directed(&self) -> bool {
        self.meta.directed
    }

    pub fn csr(&self, dir: Direction) -> &TemporalCsr {
        match dir {
            Direction::Out => &self.out_csr,
            Direction::In => &self.in_csr,
        }
    }

    pub fn registry(&self) -> &VertexIndexRegistry {
        &self.registry
    }

    pub fn ordering(&self) -> OrderingPredicate {
        self.ordering
    }

    pub fn set_ordering(&mut self, ordering: OrderingPredicate) {
        self.ordering = ordering;
    }

    pub fn config(&self) -> &GraphConfig {
        &self.config
    }

    pub fn set_access_mode(&mut self, mode: AccessMode) {
        self.config.access_mode = mode;
    }

    pub fn set_cost_params(&mut self, cost: CostModelParams) -> Result<()> {
        cost.validate()?;
        self.config.cost = cost;
        Ok(())
    }

    pub fn rebuild_registry(&mut self, cutoff: usize) -> Result<()> {
        self.registry = VertexIndexRegistry::build(&self.out_csr, &self.in_csr, cutoff)?;
        self.config.index_cutoff = cutoff;
        Ok(())
    }

    pub fn stats(&self) -> &AccessStats {
        &self.stats
    }

    /// Position in the `dir` layout of the edge stored at `pos` in the
    /// opposite layout.
    #[inline]
    pub fn cross_position(&self, dir: Direction, pos: usize) -> usize {
        match dir {
            Direction::Out => self.in_to_out[pos] as usize,
            Direction::In => self.out_to_in[pos] as usize,
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                num_vertices: self.num_vertices(),
            })
        }
    }

    /// Cost-model decision for `v`, ignoring the forced access mode.
    pub fn choose_access(&self, dir: Direction, v: VertexId, w: QueryWindow) -> AccessDecision {
        self.registry.choose(dir, v, w, &self.config.cost)
    }

    /// Access path for `v` under the configured mode, or `None` when no edge
    /// of `v` can start inside `w`. Does not touch the counters.
    #[inline]
    fn plan_quiet(&self, dir: Direction, v: VertexId, w: QueryWindow) -> Option<AccessDecision> {
        match self.csr(dir).start_bounds(v) {
            Some((lo, hi)) if hi >= w.t_a && lo <= w.t_b => {}
            _ => return None,
        }
        Some(match self.config.access_mode {
            AccessMode::ForceScan => AccessDecision::unindexed(),
            AccessMode::ForceTger if self.registry.is_indexed(dir, v) => AccessDecision {
                method: AccessMethod::Tger,
                ..self.choose_access(dir, v, w)
            },
            AccessMode::ForceTger => AccessDecision::unindexed(),
            AccessMode::Auto => self.choose_access(dir, v, w),
        })
    }

    #[inline]
    fn plan(&self, dir: Direction, v: VertexId, w: QueryWindow) -> Option<AccessMethod> {
        let Some(decision) = self.plan_quiet(dir, v, w) else {
            self.stats.pruned.fetch_add(1, Ordering::Relaxed);
            return None;
        };
        let counter = match decision.method {
            AccessMethod::Tger => &self.stats.tger,
            AccessMethod::Scan => &self.stats.scan,
        };
        counter.fetch_add(1, Ordering::Relaxed);
        Some(decision.method)
    }

    /// Estimated number of edge visits to read `v`'s edges in `w`: the
    /// estimate plus tree height for TGER, the degree for a scan.
    pub fn access_work(&self, dir: Direction, v: VertexId, w: QueryWindow) -> usize {
        match self.plan_quiet(dir, v, w) {
            None => 0,
            Some(d) => {
                let deg = self.csr(dir).degree(v);
                match (d.method, d.k_hat, self.registry.get(dir, v)) {
                    (AccessMethod::Tger, Some(k), Some(ix)) => k.ceil() as usize + ix.tger.height(),
                    _ => deg,
                }
            }
        }
    }

    /// Calls `f` with the `dir`-layout position of every edge of `v`
    /// contained in `w`. Order depends on the access path.
    pub fn for_each_edge(&self, dir: Direction, v: VertexId, w: QueryWindow, mut f: impl FnMut(usize)) {
        let Some(method) = self.plan(dir, v, w) else {
            return;
        };
        self.run_access(method, dir, v, w, &mut f);
    }

    fn run_access(&self, method: AccessMethod, dir: Direction, v: VertexId, w: QueryWindow, f: &mut impl FnMut(usize)) {
        let csr = self.csr(dir);
        match method {
            AccessMethod::Scan => csr.scan_with(v, w, f),
            AccessMethod::Tger => {
                let base = csr.segment(v).start;
                let ix = self.registry.get(dir, v).expect("planned TGER access on unindexed vertex");
                ix.tger.query_window_with(w, |_, &off| f(base + off as usize));
            }
        }
    }

    /// Parallel variant of [`TemporalGraph::for_each_edge`] for high-degree
    /// vertices, returning mapped matches in ascending position order.
    pub fn par_edges<T: Send>(
        &self,
        dir: Direction,
        v: VertexId,
        w: QueryWindow,
        map: impl Fn(usize) -> Option<T> + Sync + Send,
    ) -> Vec<T> {
        let Some(method) = self.plan(dir, v, w) else {
            return Vec::new();
        };
        let csr = self.csr(dir);
        let seg = csr.segment(v);
        match method {
            AccessMethod::Scan if seg.len() >= PARALLEL_SCAN_GRAIN => seg
                .into_par_iter()
                .with_min_len(1024)
                .filter(|&pos| w.contains(csr.starts()[pos], csr.ends()[pos]))
                .filter_map(&map)
                .collect(),
            AccessMethod::Tger => {
                let ix = self.registry.get(dir, v).expect("planned TGER access on unindexed vertex");
                let mut hits: Vec<usize> = ix
                    .tger
                    .query_window(w)
                    .into_iter()
                    .map(|(_, off)| seg.start + off as usize)
                    .collect();
                hits.par_sort_unstable();
                hits.into_par_iter().filter_map(&map).collect()
            }
            AccessMethod::Scan => {
                let mut out = Vec::new();
                csr.scan_with(v, w, |pos| out.extend(map(pos)));
                out
            }
        }
    }

    /// Times both access paths for sampled `(vertex, window)` pairs and fits
    /// the cost constants. Unindexed vertices are skipped. `timer` receives
    /// the probe and the work to time, and returns a duration in any unit.
    pub fn calibrate(
        &self,
        dir: Direction,
        sample: &[(VertexId, QueryWindow)],
        mut timer: impl FnMut(TimingProbe, &mut dyn FnMut()) -> f64,
    ) -> Result<CostModelParams> {
        let mut samples = Vec::new();
        for &(v, w) in sample {
            self.check_vertex(v)?;
            if !self.registry.is_indexed(dir, v) {
                continue;
            }
            let deg = self.csr(dir).degree(v);
            let mut k = 0;
            self.csr(dir).scan_with(v, w, |_| k += 1);
            let mut time = |method| {
                let probe = TimingProbe { method, vertex: v, deg, k };
                let mut sink = 0usize;
                let t = timer(probe, &mut || self.run_access(method, dir, v, w, &mut |p| sink ^= p));
                std::hint::black_box(sink);
                t
            };
            let tger_time = time(AccessMethod::Tger);
            let scan_time = time(AccessMethod::Scan);
            samples.push(TimingSample { deg, k, tger_time, scan_time });
        }
        if samples.is_empty() {
            return Err(Error::Calibration("sample contains no indexed vertex".into()));
        }
        let fitted = fit_constants(&samples)?;
        Ok(CostModelParams {
            theta_sel: self.config.cost.theta_sel,
            ..fitted
        })
    }
}

/// Wall-clock timer for [`TemporalGraph::calibrate`], in nanoseconds.
pub fn wall_clock_timer(_: TimingProbe, work: &mut dyn FnMut()) -> f64 {
    let t = Instant::now();
    work();
    t.elapsed().as_nanos() as f64
}

fn invert(order: &[usize]) -> Vec<u32> {
    let mut inv = vec![0u32; order.len()];
    for (pos, &i) in order.iter().enumerate() {
        inv[i] = pos as u32;
    }
    inv
}

fn compose(order: &[usize], inv: &[u32]) -> Vec<u32> {
    order.par_iter().map(|&i| inv[i]).collect()
}
