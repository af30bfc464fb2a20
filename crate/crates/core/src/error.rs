use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong while counting, verifying or caching.
#[derive(Debug, Error)]
pub enum CensusError {
    #[error("non-exact division: {numerator} / {denominator} ({context})")]
    NonExactDivision {
        numerator: String,
        denominator: String,
        context: String,
    },

    #[error("negative intermediate count in {family} at cell ({n}, {d})")]
    NegativeIntermediate { family: String, n: usize, d: usize },

    #[error("non-integral result in {0}")]
    NonIntegral(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("oracle budget exceeded: {darts} darts requested, budget is {budget}")]
    BudgetExceeded { darts: usize, budget: usize },

    #[error("kappa3({n}) disagrees with the Klein recurrence under every theta reading")]
    Reconciliation { n: usize },

    #[error("cache i/o error on {path}: {source}")]
    CacheIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error("cache version mismatch: found {found}, expected {expected}")]
    CacheVersion { found: String, expected: String },

    #[error("cache checksum failure: {0}")]
    CacheChecksum(String),
}

pub type Result<T> = std::result::Result<T, CensusError>;
