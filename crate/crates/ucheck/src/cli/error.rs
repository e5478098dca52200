use thiserror::Error;

use crate::engine::EngineError;
use crate::graph::GraphError;
use crate::sim::SimError;
use crate::stats::StatsError;

/// CLI failures, classified by exit code: 1 for usage errors, 2 for data or
/// graph errors, 3 for degenerate models. Verdicts are results, not
/// failures, and always exit 0.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::RankDeficient { .. }
            | StatsError::ZeroResidualVariance
            | StatsError::ZeroVariance
            | StatsError::TooFewRows { .. } => CliError::Degenerate(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Stats(inner) => inner.into(),
            EngineError::Graph(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Stats(inner) => inner.into(),
            SimError::MaxAttemptsExceeded { .. } => CliError::Degenerate(e.to_string()),
            SimError::BadSpec(_) | SimError::NegativeResidualVariance(_) => {
                CliError::Usage(e.to_string())
            }
        }
    }
}
