//! The structural certification oracle: which candidate covariates are
//! eligible, which of them witness validity, and the resulting verdict.

use serde::{Deserialize, Serialize};

use super::assumptions::{check_assumptions, violations};
use super::dag::Dag;
use super::dsep::{d_separated_ids, resolve_set};
use super::error::GraphError;

/// Three-way outcome of the certification logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleVerdict {
    /// Some eligible covariate is separated from the outcome given the rest
    /// plus the exposure: the candidate set is valid (and so is each
    /// witness's reduced set).
    ValidConfirmed,
    /// Every eligible covariate stays connected to the outcome: the set is
    /// invalid or minimally sufficient, indistinguishably.
    InvalidOrMinimal,
    /// No covariate is connected to the exposure given the others; the test
    /// cannot say anything.
    NoEligibleCovariate,
}

/// One exposure-connected candidate covariate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibleCovariate {
    pub name: String,
    /// The remaining candidates once this covariate is removed.
    pub reduced_set: Vec<String>,
    /// Whether this covariate is separated from the outcome given
    /// `reduced_set` plus the exposure.
    pub is_witness: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub exposure: String,
    pub outcome: String,
    pub candidates: Vec<String>,
    pub eligible: Vec<EligibleCovariate>,
    pub witnesses: Vec<String>,
    pub verdict: OracleVerdict,
}

/// Runs the structural oracle for candidate set `a` on `(x, y)`.
///
/// Requires a nonempty, non-latent candidate set and a graph with no
/// violation of the checkable assumptions (reverse causation,
/// exposure-caused covariates, exposure-caused selection).
pub fn certification_oracle(dag: &Dag, x: &str, y: &str, a: &[&str]) -> Result<OracleReport, GraphError> {
    if a.is_empty() {
        return Err(GraphError::EmptyCandidateSet);
    }
    let x_id = dag.node_id(x)?;
    let y_id = dag.node_id(y)?;
    let a_ids = resolve_set(dag, a)?;
    for &v in &a_ids {
        if v == x_id || v == y_id {
            return Err(GraphError::OverlappingSets(dag.node_name(v).to_string()));
        }
        if dag.is_latent_id(v) {
            return Err(GraphError::LatentInAdjustmentSet(
                dag.node_name(v).to_string(),
            ));
        }
    }
    let findings = check_assumptions(dag, x, y, a)?;
    let violated = violations(&findings);
    if !violated.is_empty() {
        return Err(GraphError::AssumptionViolated(violated));
    }

    let report = oracle_ids(dag, x_id, y_id, &a_ids);
    Ok(report)
}

/// Core oracle over resolved ids; assumption checks are the caller's duty.
pub(crate) fn oracle_ids(dag: &Dag, x: usize, y: usize, a: &[usize]) -> OracleReport {
    let selection = dag.selection_id().filter(|&s| s != x && s != y);
    let mut eligible = Vec::new();
    let mut witnesses = Vec::new();
    for (j, &z) in a.iter().enumerate() {
        let reduced: Vec<usize> = a
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &v)| v)
            .collect();
        let mut cond = reduced.clone();
        if let Some(s) = selection {
            if s != z && !cond.contains(&s) {
                cond.push(s);
            }
        }
        // condition (i): connected to the exposure given the rest
        if d_separated_ids(dag, &[z], &[x], &cond) {
            continue;
        }
        // condition (ii): separated from the outcome given the rest plus x
        let mut cond_y = cond.clone();
        cond_y.push(x);
        let is_witness = d_separated_ids(dag, &[z], &[y], &cond_y);
        if is_witness {
            witnesses.push(dag.node_name(z).to_string());
        }
        eligible.push(EligibleCovariate {
            name: dag.node_name(z).to_string(),
            reduced_set: reduced.iter().map(|&v| dag.node_name(v).to_string()).collect(),
            is_witness,
        });
    }
    let verdict = if eligible.is_empty() {
        OracleVerdict::NoEligibleCovariate
    } else if witnesses.is_empty() {
        OracleVerdict::InvalidOrMinimal
    } else {
        OracleVerdict::ValidConfirmed
    };
    OracleReport {
        exposure: dag.node_name(x).to_string(),
        outcome: dag.node_name(y).to_string(),
        candidates: a.iter().map(|&v| dag.node_name(v).to_string()).collect(),
        eligible,
        witnesses,
        verdict,
    }
}

impl std::fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OracleVerdict::ValidConfirmed => "ValidConfirmed",
            OracleVerdict::InvalidOrMinimal => "InvalidOrMinimal",
            OracleVerdict::NoEligibleCovariate => "NoEligibleCovariate",
        };
        f.write_str(s)
    }
}
