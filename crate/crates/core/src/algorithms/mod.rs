//! Windowed temporal graph algorithms built on the engine.
//!
//! Earliest arrival and latest departure under the succession orderings run
//! the vertex-based frontier loop. Every other path metric, and every metric
//! under `Overlaps`, runs on per-edge labels (see [`labels`]), since a single
//! value per vertex cannot capture which later edges a path may still take.

pub mod bc;
pub mod cc;
pub mod kcore;
pub mod labels;
pub mod pagerank;
mod vertex_paths;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bc::{betweenness, betweenness_from, top_out_degree_sources};
pub use cc::connected_components;
pub use kcore::k_core;
pub use labels::{fastest_path, shortest_duration, shortest_duration_weighted, temporal_bfs};
pub use pagerank::{pagerank, PageRankResult};
pub use vertex_paths::{earliest_arrival, latest_departure};

use crate::error::Error;

/// Per-vertex optimum; `None` marks an unreached vertex.
pub type PathResult = Vec<Option<u64>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    EarliestArrival,
    LatestDeparture,
    Fastest,
    ShortestDuration,
    TemporalBfs,
    ConnectedComponents,
    KCore,
    Betweenness,
    PageRank,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::EarliestArrival,
        Algorithm::LatestDeparture,
        Algorithm::Fastest,
        Algorithm::ShortestDuration,
        Algorithm::TemporalBfs,
        Algorithm::ConnectedComponents,
        Algorithm::KCore,
        Algorithm::Betweenness,
        Algorithm::PageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::EarliestArrival => "earliest-arrival",
            Algorithm::LatestDeparture => "latest-departure",
            Algorithm::Fastest => "fastest",
            Algorithm::ShortestDuration => "shortest-duration",
            Algorithm::TemporalBfs => "bfs",
            Algorithm::ConnectedComponents => "cc",
            Algorithm::KCore => "kcore",
            Algorithm::Betweenness => "bc",
            Algorithm::PageRank => "pagerank",
        }
    }

    /// Single-source path algorithms (run once per source).
    pub fn is_path(self) -> bool {
        matches!(
            self,
            Algorithm::EarliestArrival
                | Algorithm::LatestDeparture
                | Algorithm::Fastest
                | Algorithm::ShortestDuration
                | Algorithm::TemporalBfs
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let found = Algorithm::ALL.into_iter().find(|a| a.name() == s).or(match s {
            "ea" => Some(Algorithm::EarliestArrival),
            "ld" => Some(Algorithm::LatestDeparture),
            "sd" | "shortest" => Some(Algorithm::ShortestDuration),
            "temporal-bfs" => Some(Algorithm::TemporalBfs),
            "connected-components" => Some(Algorithm::ConnectedComponents),
            "k-core" => Some(Algorithm::KCore),
            "betweenness" => Some(Algorithm::Betweenness),
            _ => None,
        });
        found.ok_or_else(|| {
            let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            Error::InvalidArgument(format!("unknown algorithm '{s}' (expected one of {})", names.join(", ")))
        })
    }
}
