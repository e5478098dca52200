use thiserror::Error;

use crate::graph::GraphError;
use crate::stats::StatsError;

/// Errors from the data-level test machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("candidate covariate set is empty")]
    EmptyCandidateSet,
    #[error("variable `{0}` appears in more than one role")]
    RoleOverlap(String),
    #[error("p-value maps disagree on key `{0}`")]
    KeyMismatch(String),
    #[error("drop set member `{0}` is not a candidate covariate")]
    DropNotSubset(String),
    #[error("{got} variables exceed the subset-enumeration cap of {cap}")]
    TooLarge { got: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    BadConfig(String),
}
