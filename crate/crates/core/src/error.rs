use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by graph ingestion, certification and correlation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node '{label}'")]
    SelfLoop { line: usize, label: String },

    #[error("graph must have >= 2 nodes, found {0}")]
    TooFewNodes(usize),

    #[error("unknown node '{0}'")]
    UnknownNode(String),

    #[error("duplicate node '{0}'")]
    DuplicateNode(String),

    #[error(
        "graph is disconnected ({components} components): infinite distance between components"
    )]
    Disconnected { components: usize },

    #[error("matrix is not symmetric (max asymmetry {max_asymmetry:e})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("matrix must be square with n >= 2, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },

    #[error("distance matrix: {0}")]
    InvalidDistance(String),

    #[error("scale k must be finite and > 0, got {0}")]
    InvalidScale(f64),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("zero variance: signal is constant, so the correlation divides by zero")]
    ZeroVariance,

    #[error(
        "negative variance {0:e}: W is not positive definite on the complement of the constant \
         vector, so sigma is imaginary"
    )]
    NegativeVariance(f64),

    #[error(
        "weight matrix is not certified positive definite on the complement of the constant \
         vector (min eigenvalue {min_nonforced:e}); the correlation may be imaginary, infinite \
         or outside [-1, 1]"
    )]
    Uncertified { min_nonforced: f64 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
