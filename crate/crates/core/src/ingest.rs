//! Edge-list I/O, synthetic graph generation and recent-fraction windows.
//!
//! Text format: one edge per line, `src dst start [end] [weight]`, separated
//! by whitespace. Lines starting with `#` are comments. Every data line in a
//! file has the same number of columns. Paths ending in `.gz` are gzip.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use rand::distr::weighted::WeightedIndex;
use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp, LogNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{GraphMeta, QueryWindow, TemporalEdge, Timestamp, VertexId};

pub const DEFAULT_MAX_DURATION: u64 = 3600;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdMode {
    /// Ids are integers used as given; `n_v` is the largest id plus one.
    Integer,
    /// Ids are arbitrary tokens, densified to `0..n_v` in order of first
    /// appearance.
    #[default]
    Map,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoadOptions {
    pub id_mode: IdMode,
    pub directed: bool,
    /// Seed and bound for end times of 3-column files.
    pub seed: u64,
    pub max_duration: u64,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            id_mode: IdMode::Map,
            directed: true,
            seed: 0,
            max_duration: DEFAULT_MAX_DURATION,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub edges: Vec<TemporalEdge>,
    pub meta: GraphMeta,
    /// Original token of each vertex, in `IdMode::Map` only.
    pub names: Option<Vec<String>>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn is_gzip(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    let file = File::open(path).map_err(io_err(path))?;
    let inner: Box<dyn Read> = if is_gzip(path) {
        Box::new(MultiGzDecoder::new(file))
    } else {
        Box::new(file)
    };
    Ok(Box::new(BufReader::new(inner)))
}

pub fn load_edge_list(path: &Path, opts: &LoadOptions) -> Result<LoadedGraph> {
    read_edge_list(open(path)?, path, opts)
}

/// Parses an edge list from any reader; `path` is only used in errors.
pub fn read_edge_list(reader: impl BufRead, path: &Path, opts: &LoadOptions) -> Result<LoadedGraph> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut columns: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<VertexId> = None;

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(io_err(path))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(3..=5).contains(&fields.len()) {
            return Err(parse_err(lineno, format!("expected 3 to 5 columns, found {}", fields.len())));
        }
        match columns {
            None => columns = Some(fields.len()),
            Some(c) if c != fields.len() => {
                return Err(parse_err(lineno, format!("expected {c} columns like the first data line, found {}", fields.len())));
            }
            _ => {}
        }
        let mut vertex = |tok: &str| -> Result<VertexId> {
            match opts.id_mode {
                IdMode::Integer => {
                    let v: VertexId = tok
                        .parse()
                        .ok()
                        .filter(|&v| v < VertexId::MAX)
                        .ok_or_else(|| parse_err(lineno, format!("invalid vertex id '{tok}'")))?;
                    max_id = Some(max_id.map_or(v, |m| m.max(v)));
                    Ok(v)
                }
                IdMode::Map => {
                    if let Some(&v) = ids.get(tok) {
                        return Ok(v);
                    }
                    let v = names.len() as VertexId;
                    ids.insert(tok.to_string(), v);
                    names.push(tok.to_string());
                    Ok(v)
                }
            }
        };
        let src = vertex(fields[0])?;
        let dst = vertex(fields[1])?;
        let time = |tok: &str, what: &str| -> Result<Timestamp> {
            tok.parse()
                .ok()
                .filter(|&t| t < Timestamp::MAX)
                .ok_or_else(|| parse_err(lineno, format!("invalid {what} time '{tok}'")))
        };
        let start = time(fields[2], "start")?;
        let end = if fields.len() >= 4 { time(fields[3], "end")? } else { start };
        if end < start {
            return Err(parse_err(lineno, format!("interval ends before it starts ({start} > {end})")));
        }
        let weight = match fields.get(4) {
            Some(tok) => tok
                .parse::<f64>()
                .ok()
                .filter(|w| w.is_finite())
                .ok_or_else(|| parse_err(lineno, format!("invalid weight '{tok}'")))?,
            None => 1.0,
        };
        edges.push(TemporalEdge::weighted(src, dst, start, end, weight));
    }

    if columns == Some(3) {
        sample_end_times(&mut edges, opts.seed, opts.max_duration)?;
    }
    let (n, names) = match opts.id_mode {
        IdMode::Integer => (max_id.map_or(0, |m| m as usize + 1), None),
        IdMode::Map => (names.len(), Some(names)),
    };
    let meta = GraphMeta::from_edges(&edges, n, opts.directed)?;
    Ok(LoadedGraph { edges, meta, names })
}

/// Sets `end = start + U` with `U` uniform on `1..=max_duration`.
pub fn sample_end_times(edges: &mut [TemporalEdge], seed: u64, max_duration: u64) -> Result<()> {
    if max_duration < 1 {
        return Err(Error::InvalidArgument("max duration must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dur = Uniform::new_inclusive(1, max_duration).expect("non-empty range");
    for (i, e) in edges.iter_mut().enumerate() {
        e.end = e
            .start
            .checked_add(dur.sample(&mut rng))
            .filter(|&t| t < Timestamp::MAX)
            .ok_or(Error::ReservedTimestamp { index: i })?;
    }
    Ok(())
}

/// Writes `src dst start end weight` lines; gzip when the path ends in `.gz`.
pub fn write_edge_list(path: &Path, edges: &[TemporalEdge]) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    if is_gzip(path) {
        let mut enc = GzEncoder::new(BufWriter::new(file), Compression::default());
        write_edges(&mut enc, edges).map_err(io_err(path))?;
        enc.finish().and_then(|mut w| w.flush()).map_err(io_err(path))
    } else {
        let mut w = BufWriter::new(file);
        write_edges(&mut w, edges).and_then(|_| w.flush()).map_err(io_err(path))
    }
}

pub fn write_edges(w: &mut impl Write, edges: &[TemporalEdge]) -> std::io::Result<()> {
    for e in edges {
        writeln!(w, "{} {} {} {} {}", e.src, e.dst, e.start, e.end, e.weight)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub num_vertices: usize,
    pub num_edges: usize,
    /// Log-normal parameters of the per-vertex out-degree weight.
    pub mu: f64,
    pub sigma: f64,
    /// Rate of the start-time arrival process.
    pub lambda: f64,
    pub min_duration: u64,
    pub max_duration: u64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            num_vertices: 10_000,
            num_edges: 1_000_000,
            mu: 1.0,
            sigma: 1.5,
            lambda: 1.0,
            min_duration: 1,
            max_duration: DEFAULT_MAX_DURATION,
            seed: 42,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("generator: {what}")));
        if self.num_vertices == 0 || self.num_vertices > VertexId::MAX as usize {
            return bad("num_vertices must be in 1..2^32-1");
        }
        if !(self.mu.is_finite() && self.sigma.is_finite() && self.sigma > 0.0) {
            return bad("mu must be finite and sigma positive");
        }
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return bad("lambda must be positive");
        }
        if self.min_duration < 1 || self.min_duration > self.max_duration {
            return bad("durations need 1 <= min_duration <= max_duration");
        }
        Ok(())
    }
}

/// Sources drawn proportionally to log-normal weights, destinations
/// uniformly. Start times follow one arrival process whose gaps are
/// `max(1, ceil(Exp(lambda)))`; each source's own starts are a thinning of
/// it, so they are cumulative sums of exponential gaps too.
pub fn generate(cfg: &GeneratorConfig) -> Result<Vec<TemporalEdge>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let lognormal = LogNormal::new(cfg.mu, cfg.sigma).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let weights: Vec<f64> = (0..cfg.num_vertices).map(|_| lognormal.sample(&mut rng)).collect();
    let pick_src = WeightedIndex::new(&weights).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let pick_dst = Uniform::new(0, cfg.num_vertices as VertexId).expect("non-empty range");
    let gap = Exp::new(cfg.lambda).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let dur = Uniform::new_inclusive(cfg.min_duration, cfg.max_duration).expect("non-empty range");
    let mut clock = 0u64;
    let mut edges = Vec::with_capacity(cfg.num_edges);
    for _ in 0..cfg.num_edges {
        let src = pick_src.sample(&mut rng);
        let dst = pick_dst.sample(&mut rng);
        let step = (gap.sample(&mut rng).ceil() as u64).max(1);
        clock += step;
        let start = clock;
        edges.push(TemporalEdge::new(src as VertexId, dst, start, start + dur.sample(&mut rng)));
    }
    Ok(edges)
}

/// Window matching the `fraction` of edges with the latest starts: `t_a` is
/// the nearest-rank `(1 - fraction)` quantile of start times and `t_b` the
/// latest end.
pub fn window_for_recent_fraction(edges: &[TemporalEdge], fraction: f64) -> Result<QueryWindow> {
    if edges.is_empty() {
        return Err(Error::InvalidArgument("cannot derive a window from an empty edge set".into()));
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!("fraction must lie in (0, 1], got {fraction}")));
    }
    let mut starts: Vec<Timestamp> = edges.iter().map(|e| e.start).collect();
    starts.sort_unstable();
    let n = starts.len();
    let k = ((fraction * n as f64).ceil() as usize).clamp(1, n);
    let t_b = edges.iter().map(|e| e.end).max().unwrap_or(0);
    QueryWindow::new(starts[n - k], t_b)
}
