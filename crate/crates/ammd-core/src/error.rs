//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by geometry, decomposition, distance, classification, and
/// dataset operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("non-finite coordinate at position {index}")]
    NonFinite { index: usize },

    #[error("matrix is not symmetric")]
    AsymmetricInput,

    #[error("sequence '{name}' has no label")]
    UnlabeledSequence { name: String },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Manifest { path: String, message: String },

    #[error("protocol mismatch: {0}")]
    ProtocolMismatch(String),

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
