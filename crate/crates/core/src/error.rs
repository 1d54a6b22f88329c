use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("node {0} listed more than once")]
    DuplicateNode(usize),

    #[error("dimension mismatch: expected {expected}, got {actual} ({what})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("node set is not independent: edge ({0}, {1}) lies inside it")]
    NotIndependent(usize, usize),

    #[error("graph with {n} nodes exceeds the limit of {limit} for {solver}")]
    TooLarge {
        solver: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("branch-and-bound exceeded its budget of {0} explored nodes")]
    BudgetExceeded(u64),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
