use std::path::PathBuf;

use thiserror::Error;

use crate::elbow::TangentSeries;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller broke an operation's precondition (index or dimension out of range).
    #[error("usage error: {0}")]
    Usage(String),

    /// Requested run parameters cannot be satisfied for this dataset.
    #[error("configuration error: {0}")]
    Config(String),

    /// Malformed input data.
    #[error("data error: {0}")]
    Data(String),

    /// Every point is identical, so SSE(1) = 0 and no curve exists.
    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// `1 + m_{k-1} * m_k` is exactly zero, i.e. the corner angle is exactly 90 degrees.
    #[error("tangent is singular at k = {k}: 1 + product of adjacent slopes is zero")]
    Singularity { k: usize },

    #[error("no valid elbow: every interior corner faces downwards")]
    NoValidElbow { series: TangentSeries },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
