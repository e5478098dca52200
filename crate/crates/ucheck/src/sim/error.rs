use thiserror::Error;

use crate::stats::StatsError;

/// Errors from the simulation harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("bad simulation parameter: {0}")]
    BadSpec(String),
    #[error("rejection sampling exceeded {max} attempts without an accepted replicate")]
    MaxAttemptsExceeded { max: u64 },
    #[error("negative residual variance: {0}")]
    NegativeResidualVariance(String),
}
