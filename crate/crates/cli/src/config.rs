use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;
use tgx_core::selective::DEFAULT_INDEX_CUTOFF;
use tgx_core::{AccessMode, CostModelParams, GraphConfig};

use crate::args::GraphArgs;

/// Optional TOML file:
///
/// ```toml
/// [index]
/// cutoff = 2048
///
/// [cost]
/// c = 1.0
/// c_prime = 1.0
/// theta_sel = 0.2
/// ```
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub index: IndexSection,
    pub cost: CostSection,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IndexSection {
    pub cutoff: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostSection {
    pub c: Option<f64>,
    pub c_prime: Option<f64>,
    pub theta_sel: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Flags override the file, which overrides the defaults.
pub fn graph_config(args: &GraphArgs) -> Result<GraphConfig> {
    let file = match &args.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let defaults = CostModelParams::default();
    let cost = CostModelParams {
        c: file.cost.c.unwrap_or(defaults.c),
        c_prime: file.cost.c_prime.unwrap_or(defaults.c_prime),
        theta_sel: args.theta_sel.or(file.cost.theta_sel).unwrap_or(defaults.theta_sel),
    };
    cost.validate()?;
    let index_cutoff = args.index_cutoff.or(file.index.cutoff).unwrap_or(DEFAULT_INDEX_CUTOFF);
    Ok(GraphConfig {
        index_cutoff,
        cost,
        access_mode: args.force_access,
    })
}

pub fn with_mode(config: GraphConfig, access_mode: AccessMode) -> GraphConfig {
    GraphConfig { access_mode, ..config }
}
