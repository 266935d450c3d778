//! Temporal graph storage (T-CSR), the TGER interval index, selective
//! per-vertex indexing and parallel temporal graph algorithms.

pub mod algorithms;
pub mod engine;
pub mod error;
pub mod ingest;
pub mod model;
pub mod oracle;
pub mod selective;
pub mod tcsr;
pub mod tger;

pub use engine::{AccessMode, GraphConfig, TemporalGraph, VertexSubset};
pub use error::{Error, Result};
pub use model::{
    GraphMeta, Interval, OrderingPredicate, QueryWindow, TemporalEdge, Timestamp, VertexId,
};
pub use tcsr::{Direction, NeighborEdge, TemporalCsr};
pub use tger::{HeapMode, IndexAxes, TgerIndex, ThreeSidedQuery};
pub use selective::{AccessDecision, AccessMethod, CostModelParams, VertexIndexRegistry};
