use thiserror::Error;

use super::assumptions::AssumptionFinding;

/// Errors from graph construction and structural queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph contains a directed cycle")]
    CycleDetected,
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("node `{0}` appears in more than one of the query sets")]
    OverlappingSets(String),
    #[error("latent node `{0}` cannot be conditioned on or adjusted for")]
    LatentInAdjustmentSet(String),
    #[error("graph has {nodes} nodes; this operation enumerates paths and is capped at {max}")]
    TooLarge { nodes: usize, max: usize },
    #[error("structural assumptions violated: {}", describe_findings(.0))]
    AssumptionViolated(Vec<AssumptionFinding>),
    #[error("candidate covariate set is empty")]
    EmptyCandidateSet,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("graph file error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn describe_findings(findings: &[AssumptionFinding]) -> String {
    findings
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
