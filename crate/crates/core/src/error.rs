use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation lengths differ: edges = {edges}, sigma0 has {sigma0}, sigma1 has {sigma1}")]
    LengthMismatch {
        edges: usize,
        sigma0: usize,
        sigma1: usize,
    },

    #[error("image sequence is not a bijection: {0} appears more than once")]
    NotBijective(usize),

    #[error("edge index {index} out of range for {edges} edges")]
    IndexOutOfRange { index: i64, edges: usize },

    #[error("operation requires a connected dessin, found {0} components")]
    Disconnected(usize),

    #[error("operation requires a non-empty dessin")]
    Empty,

    #[error("{what} = {value} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("malformed canonical key {0:?}")]
    MalformedKey(String),

    #[error("malformed coefficient {0:?}")]
    MalformedCoefficient(String),

    #[error("{}:{line}: {message}", path.display())]
    CorruptCache {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: cache format version mismatch (found {found}, expected {expected})", path.display())]
    CacheVersion {
        path: PathBuf,
        found: String,
        expected: u32,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
