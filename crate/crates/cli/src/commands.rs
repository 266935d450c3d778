use std::time::Instant;

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use tgx_core::algorithms::{self, Algorithm, PathResult};
use tgx_core::engine::AccessCounts;
use tgx_core::ingest::{self, window_for_recent_fraction};
use tgx_core::{AccessMethod, AccessMode, Direction, QueryWindow, TemporalEdge, TemporalGraph, VertexId};

use crate::args::{AccuracyArgs, AlgoArgs, GenerateArgs, RunArgs, SweepArgs, WindowArgs};
use crate::config::graph_config;
use crate::dataset::{self, DatasetDescriptor};

pub const DEFAULT_TOP_K: usize = 100;
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.05;

#[derive(Clone, Debug, Serialize)]
pub struct SourceReport {
    pub source: VertexId,
    pub wall_seconds: f64,
    pub digest: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub algorithm: String,
    pub dataset: DatasetDescriptor,
    pub window: QueryWindow,
    pub ordering: String,
    pub access_mode: AccessMode,
    pub index_cutoff: usize,
    pub indexed_vertices: usize,
    pub threads: usize,
    pub load_seconds: f64,
    pub build_seconds: f64,
    pub wall_seconds: f64,
    pub access: AccessCounts,
    pub digest: String,
    pub sources: Vec<SourceReport>,
}

/// Stable SHA-256 over result arrays. Each array is tagged and
/// length-prefixed; integers and float bits are little-endian.
#[derive(Default)]
struct ResultHasher(Sha256);

impl ResultHasher {
    fn header(&mut self, tag: u8, len: usize) {
        self.0.update([tag]);
        self.0.update((len as u64).to_le_bytes());
    }

    fn path(&mut self, r: &PathResult) {
        self.header(b'p', r.len());
        for x in r {
            self.0.update(x.unwrap_or(u64::MAX).to_le_bytes());
        }
    }

    fn ids(&mut self, r: &[VertexId]) {
        self.header(b'i', r.len());
        for x in r {
            self.0.update(x.to_le_bytes());
        }
    }

    fn floats(&mut self, r: &[f64]) {
        self.header(b'f', r.len());
        for x in r {
            self.0.update(x.to_bits().to_le_bytes());
        }
    }

    fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}

pub fn resolve_window(edges: &[TemporalEdge], w: &WindowArgs) -> Result<QueryWindow> {
    Ok(match (w.window_start, w.window_end) {
        (Some(a), Some(b)) => QueryWindow::new(a, b)?,
        _ => window_for_recent_fraction(edges, w.window_fraction.unwrap_or(DEFAULT_WINDOW_FRACTION))?,
    })
}

fn sources(g: &TemporalGraph, a: &AlgoArgs) -> Result<Vec<VertexId>> {
    if let Some(s) = a.source {
        g.check_vertex(s)?;
        return Ok(vec![s]);
    }
    Ok(algorithms::top_out_degree_sources(g, a.top_k.unwrap_or(DEFAULT_TOP_K)))
}

pub struct Execution {
    pub digest: String,
    pub wall_seconds: f64,
    pub sources: Vec<SourceReport>,
}

/// Runs the selected algorithm. `wall_seconds` covers the algorithm calls
/// only, not result hashing.
pub fn execute(g: &TemporalGraph, a: &AlgoArgs, w: QueryWindow) -> Result<Execution> {
    let mut all = ResultHasher::default();
    let mut per_source = Vec::new();
    let mut wall_seconds = 0.0;
    if a.algo.is_path() {
        let f = match a.algo {
            Algorithm::EarliestArrival => algorithms::earliest_arrival,
            Algorithm::LatestDeparture => algorithms::latest_departure,
            Algorithm::Fastest => algorithms::fastest_path,
            Algorithm::ShortestDuration => algorithms::shortest_duration,
            Algorithm::TemporalBfs => algorithms::temporal_bfs,
            _ => unreachable!(),
        };
        for s in sources(g, a)? {
            let t = Instant::now();
            let r = f(g, s, w)?;
            let secs = t.elapsed().as_secs_f64();
            wall_seconds += secs;
            let mut h = ResultHasher::default();
            h.path(&r);
            all.path(&r);
            per_source.push(SourceReport {
                source: s,
                wall_seconds: secs,
                digest: h.finish(),
            });
        }
    } else {
        let timed = |f: &mut dyn FnMut() -> Result<()>| -> Result<f64> {
            let t = Instant::now();
            f()?;
            Ok(t.elapsed().as_secs_f64())
        };
        wall_seconds = match a.algo {
            Algorithm::ConnectedComponents => {
                let mut r = Vec::new();
                let secs = timed(&mut || {
                    r = algorithms::connected_components(g, w);
                    Ok(())
                })?;
                all.ids(&r);
                secs
            }
            Algorithm::KCore => {
                let mut r = Vec::new();
                let secs = timed(&mut || {
                    r = algorithms::k_core(g, w, a.k).to_ids();
                    Ok(())
                })?;
                all.ids(&r);
                secs
            }
            Algorithm::PageRank => {
                let mut r = Vec::new();
                let secs = timed(&mut || {
                    r = algorithms::pagerank(g, w, a.iterations, a.damping)?.scores;
                    Ok(())
                })?;
                all.floats(&r);
                secs
            }
            Algorithm::Betweenness => {
                let from = if a.source.is_some() || a.top_k.is_some() {
                    Some(sources(g, a)?)
                } else {
                    None
                };
                let mut r = Vec::new();
                let secs = timed(&mut || {
                    r = match &from {
                        Some(s) => algorithms::betweenness_from(g, w, s)?,
                        None => algorithms::betweenness(g, w)?,
                    };
                    Ok(())
                })?;
                all.floats(&r);
                secs
            }
            _ => unreachable!(),
        };
    }
    Ok(Execution {
        digest: all.finish(),
        wall_seconds,
        sources: per_source,
    })
}

pub fn cmd_run(args: &RunArgs) -> Result<RunReport> {
    let config = graph_config(&args.graph)?;
    let ds = dataset::load(&args.graph)?;
    let w = resolve_window(&ds.edges, &args.window)?;
    let (g, build_seconds) = dataset::build(&ds, &args.graph, config)?;
    let run = execute(&g, &args.algo, w)?;
    let registry = g.registry();
    Ok(RunReport {
        algorithm: args.algo.algo.name().to_string(),
        dataset: ds.descriptor,
        window: w,
        ordering: g.ordering().name().to_string(),
        access_mode: config.access_mode,
        index_cutoff: config.index_cutoff,
        indexed_vertices: registry.len(Direction::Out) + registry.len(Direction::In),
        threads: rayon::current_num_threads(),
        load_seconds: ds.load_seconds,
        build_seconds,
        wall_seconds: run.wall_seconds,
        access: g.stats().snapshot(),
        digest: run.digest,
        sources: run.sources,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub fraction: f64,
    pub t_a: u64,
    pub t_b: u64,
    pub indexed_seconds: f64,
    pub scan_seconds: f64,
    /// Indexed runtime normalized by the scan baseline.
    pub ratio: f64,
    pub tger_accesses: u64,
    pub scan_accesses: u64,
    pub digests_match: bool,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Vec<SweepRow>> {
    if args.fractions.is_empty() {
        bail!("--fractions must list at least one fraction");
    }
    if args.repeats == 0 {
        bail!("--repeats must be at least 1");
    }
    let config = graph_config(&args.graph)?;
    let ds = dataset::load(&args.graph)?;
    let (mut g, _) = dataset::build(&ds, &args.graph, config)?;
    let mut rows = Vec::new();
    for &fraction in &args.fractions {
        let w = window_for_recent_fraction(&ds.edges, fraction)?;
        let mut best = [f64::INFINITY; 2];
        let mut digests = [String::new(), String::new()];
        let mut counts = AccessCounts::default();
        for _ in 0..args.repeats {
            for (i, mode) in [config.access_mode, AccessMode::ForceScan].into_iter().enumerate() {
                g.set_access_mode(mode);
                g.stats().reset();
                let run = execute(&g, &args.algo, w)?;
                if i == 0 {
                    counts = g.stats().snapshot();
                }
                best[i] = best[i].min(run.wall_seconds);
                digests[i] = run.digest;
            }
        }
        rows.push(SweepRow {
            fraction,
            t_a: w.t_a,
            t_b: w.t_b,
            indexed_seconds: best[0],
            scan_seconds: best[1],
            ratio: best[0] / best[1],
            tger_accesses: counts.tger,
            scan_accesses: counts.scan,
            digests_match: digests[0] == digests[1],
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AccuracyRow {
    pub cutoff: usize,
    pub fraction: f64,
    pub t_a: u64,
    pub t_b: u64,
    /// Indexed (vertex, direction) pairs scored.
    pub indexed: usize,
    pub true_positive: usize,
    pub true_negative: usize,
    pub false_positive: usize,
    pub false_negative: usize,
    /// Empty when nothing is indexed at this cutoff.
    pub accuracy: Option<f64>,
}

pub fn cmd_accuracy(args: &AccuracyArgs) -> Result<Vec<AccuracyRow>> {
    if args.fractions.is_empty() || args.cutoffs.is_empty() {
        bail!("--fractions and --cutoffs must be non-empty");
    }
    let config = graph_config(&args.graph)?;
    let ds = dataset::load(&args.graph)?;
    let (mut g, _) = dataset::build(&ds, &args.graph, config)?;
    let theta = config.cost.theta_sel;
    let mut rows = Vec::new();
    for &cutoff in &args.cutoffs {
        g.rebuild_registry(cutoff)?;
        for &fraction in &args.fractions {
            let w = window_for_recent_fraction(&ds.edges, fraction)?;
            let mut row = AccuracyRow {
                cutoff,
                fraction,
                t_a: w.t_a,
                t_b: w.t_b,
                ..AccuracyRow::default()
            };
            for dir in [Direction::Out, Direction::In] {
                let csr = g.csr(dir);
                // (predicted TGER, should use TGER) per indexed vertex.
                let outcomes: Vec<(bool, bool)> = g
                    .registry()
                    .indexed_vertices(dir)
                    .par_iter()
                    .map(|&v| {
                        let seg = csr.segment(v);
                        let deg = seg.len();
                        let k = seg.filter(|&p| w.contains(csr.starts()[p], csr.ends()[p])).count();
                        let predicted = g.choose_access(dir, v, w).method == AccessMethod::Tger;
                        (predicted, k as f64 / deg as f64 <= theta)
                    })
                    .collect();
                for (predicted, truth) in outcomes {
                    row.indexed += 1;
                    match (predicted, truth) {
                        (true, true) => row.true_positive += 1,
                        (false, false) => row.true_negative += 1,
                        (true, false) => row.false_positive += 1,
                        (false, true) => row.false_negative += 1,
                    }
                }
            }
            row.accuracy =
                (row.indexed > 0).then(|| (row.true_positive + row.true_negative) as f64 / row.indexed as f64);
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Returns the number of edges written.
pub fn cmd_generate(args: &GenerateArgs) -> Result<usize> {
    let cfg = dataset::generator_config(&args.params, args.seed)?;
    let edges = ingest::generate(&cfg)?;
    ingest::write_edge_list(&args.out, &edges)?;
    Ok(edges.len())
}
