use std::path::PathBuf;

use thiserror::Error;

use crate::model::{Timestamp, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {index} has endpoint {vertex} outside 0..{num_vertices}")]
    EndpointOutOfRange {
        index: usize,
        vertex: VertexId,
        num_vertices: usize,
    },

    #[error("edge {index} ends before it starts ({start} > {end})")]
    InvertedInterval {
        index: usize,
        start: Timestamp,
        end: Timestamp,
    },

    #[error("edge {index} uses the reserved timestamp u64::MAX")]
    ReservedTimestamp { index: usize },

    #[error("vertex {vertex} out of range (graph has {num_vertices} vertices)")]
    VertexOutOfRange { vertex: VertexId, num_vertices: usize },

    #[error("invalid window: t_a = {t_a} > t_b = {t_b}")]
    InvalidWindow { t_a: Timestamp, t_b: Timestamp },

    #[error("cost model domain error: {0}")]
    Domain(String),

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("oracle size guard violated: {num_vertices} vertices, {num_edges} edges (limit 12 / 40)")]
    OracleTooLarge { num_vertices: usize, num_edges: usize },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
