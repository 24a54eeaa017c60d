//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by model construction and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// Input fails a structural or physical-domain requirement
    /// (non-positive counts, inconsistent geometry, malformed tables).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Evaluation was requested where the model is not trusted, e.g.
    /// inside a resonance guard window or past a small-angle threshold.
    #[error("outside model domain: {0}")]
    Domain(String),

    /// An iterative routine failed to bracket or converge.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Reading or decoding an external data file failed.
    #[error("data file error: {0}")]
    DataFile(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
