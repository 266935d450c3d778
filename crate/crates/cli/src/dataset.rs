use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use tgx_core::ingest::{self, GeneratorConfig, IdMode, LoadOptions};
use tgx_core::{GraphConfig, GraphMeta, TemporalEdge, TemporalGraph};

use crate::args::{GraphArgs, IdModeArg};

#[derive(Clone, Debug, Serialize)]
pub struct DatasetDescriptor {
    /// "file" or "generated".
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorConfig>,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub directed: bool,
    pub max_out_degree: usize,
    pub max_in_degree: usize,
    pub avg_degree: f64,
}

pub struct Dataset {
    pub descriptor: DatasetDescriptor,
    pub edges: Vec<TemporalEdge>,
    pub meta: GraphMeta,
    pub load_seconds: f64,
}

/// Reads generator settings from a TOML file, or from inline
/// `key=value,key=value` pairs.
pub fn generator_config(settings: &str, seed: Option<u64>) -> Result<GeneratorConfig> {
    let path = Path::new(settings);
    let text = if !settings.is_empty() && path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {settings}"))?
    } else {
        settings.split(',').map(str::trim).filter(|kv| !kv.is_empty()).collect::<Vec<_>>().join("\n")
    };
    let mut cfg: GeneratorConfig = toml::from_str(&text).with_context(|| format!("invalid generator settings '{settings}'"))?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn load(args: &GraphArgs) -> Result<Dataset> {
    let t = Instant::now();
    let directed = !args.undirected;
    let (kind, path, generator, edges, meta) = match (&args.graph, &args.generate) {
        (Some(p), _) => {
            let opts = LoadOptions {
                id_mode: match args.id_mode {
                    IdModeArg::Integer => IdMode::Integer,
                    IdModeArg::Map => IdMode::Map,
                },
                directed,
                seed: args.seed.unwrap_or(0),
                ..LoadOptions::default()
            };
            let loaded = ingest::load_edge_list(p, &opts)?;
            ("file", Some(p.display().to_string()), None, loaded.edges, loaded.meta)
        }
        (None, Some(settings)) => {
            let cfg = generator_config(settings, args.seed)?;
            let edges = ingest::generate(&cfg)?;
            let meta = GraphMeta::from_edges(&edges, cfg.num_vertices, directed)?;
            ("generated", None, Some(cfg), edges, meta)
        }
        (None, None) => anyhow::bail!("one of --graph or --generate is required"),
    };
    let descriptor = DatasetDescriptor {
        kind,
        path,
        generator,
        num_vertices: meta.num_vertices,
        num_edges: meta.num_edges,
        directed,
        max_out_degree: meta.max_out_degree(),
        max_in_degree: meta.max_in_degree(),
        avg_degree: meta.avg_degree(),
    };
    Ok(Dataset {
        descriptor,
        edges,
        meta,
        load_seconds: t.elapsed().as_secs_f64(),
    })
}

/// Builds the graph, returning it with the build time in seconds.
pub fn build(ds: &Dataset, args: &GraphArgs, config: GraphConfig) -> Result<(TemporalGraph, f64)> {
    let t = Instant::now();
    let g = TemporalGraph::build(&ds.edges, ds.meta.num_vertices, ds.descriptor.directed, args.ordering, config)?;
    Ok((g, t.elapsed().as_secs_f64()))
}
