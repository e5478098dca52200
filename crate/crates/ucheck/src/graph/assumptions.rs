//! Graph-checkable validation of the structural assumptions behind the test.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::dag::Dag;
use super::dsep::resolve_set;
use super::error::GraphError;

/// The structural assumptions required for the certification logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Assumption {
    /// The outcome is not a cause of the exposure.
    OutcomeDoesNotCauseExposure,
    /// The exposure is measured without error.
    ExposureMeasuredWithoutError,
    /// No candidate covariate is caused by the exposure.
    CovariatesNotCausedByExposure,
    /// Selection into the analytical sample is not caused by the exposure.
    SelectionNotCausedByExposure,
    /// d-connection implies statistical dependence.
    Faithfulness,
}

impl Assumption {
    pub fn label(&self) -> &'static str {
        match self {
            Assumption::OutcomeDoesNotCauseExposure => "outcome-not-cause-of-exposure",
            Assumption::ExposureMeasuredWithoutError => "exposure-measured-without-error",
            Assumption::CovariatesNotCausedByExposure => "covariates-not-caused-by-exposure",
            Assumption::SelectionNotCausedByExposure => "selection-not-caused-by-exposure",
            Assumption::Faithfulness => "faithfulness",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AssumptionStatus {
    Satisfied,
    /// Violated structurally; `detail` names the offending node or path.
    Violated { detail: String },
    /// Not decidable from the graph alone.
    NotCheckable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionFinding {
    pub assumption: Assumption,
    pub status: AssumptionStatus,
}

impl AssumptionFinding {
    pub fn is_violation(&self) -> bool {
        matches!(self.status, AssumptionStatus::Violated { .. })
    }
}

impl fmt::Display for AssumptionFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            AssumptionStatus::Satisfied => write!(f, "{}: satisfied", self.assumption.label()),
            AssumptionStatus::Violated { detail } => {
                write!(f, "{}: violated ({detail})", self.assumption.label())
            }
            AssumptionStatus::NotCheckable => {
                write!(f, "{}: not checkable from the graph", self.assumption.label())
            }
        }
    }
}

/// Checks the graph-verifiable assumptions for exposure `x`, outcome `y`,
/// and candidate set `a`. Returns one finding per assumption; measurement
/// error and faithfulness are reported as not checkable.
pub fn check_assumptions(
    dag: &Dag,
    x: &str,
    y: &str,
    a: &[&str],
) -> Result<Vec<AssumptionFinding>, GraphError> {
    let x_id = dag.node_id(x)?;
    let y_id = dag.node_id(y)?;
    let a_ids = resolve_set(dag, a)?;

    let mut findings = Vec::with_capacity(5);

    let reverse = dag.directed_path(y_id, x_id).map(|path| {
        path.iter()
            .map(|&v| dag.node_name(v).to_string())
            .collect::<Vec<_>>()
            .join(" -> ")
    });
    findings.push(AssumptionFinding {
        assumption: Assumption::OutcomeDoesNotCauseExposure,
        status: match reverse {
            Some(path) => AssumptionStatus::Violated {
                detail: format!("directed path {path}"),
            },
            None => AssumptionStatus::Satisfied,
        },
    });

    findings.push(AssumptionFinding {
        assumption: Assumption::ExposureMeasuredWithoutError,
        status: AssumptionStatus::NotCheckable,
    });

    let x_desc = dag.descendant_mask(x_id);
    let caused: Vec<&str> = a_ids
        .iter()
        .filter(|&&v| v != x_id && x_desc[v])
        .map(|&v| dag.node_name(v))
        .collect();
    findings.push(AssumptionFinding {
        assumption: Assumption::CovariatesNotCausedByExposure,
        status: if caused.is_empty() {
            AssumptionStatus::Satisfied
        } else {
            AssumptionStatus::Violated {
                detail: format!("covariate(s) descend from {x}: {}", caused.join(", ")),
            }
        },
    });

    let selection_status = match dag.selection_id() {
        Some(s) if s != x_id && x_desc[s] => AssumptionStatus::Violated {
            detail: format!("selection node {} descends from {x}", dag.node_name(s)),
        },
        _ => AssumptionStatus::Satisfied,
    };
    findings.push(AssumptionFinding {
        assumption: Assumption::SelectionNotCausedByExposure,
        status: selection_status,
    });

    findings.push(AssumptionFinding {
        assumption: Assumption::Faithfulness,
        status: AssumptionStatus::NotCheckable,
    });

    Ok(findings)
}

/// Convenience filter over [`check_assumptions`] output.
pub fn violations(findings: &[AssumptionFinding]) -> Vec<AssumptionFinding> {
    findings.iter().filter(|f| f.is_violation()).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_instrument_graph_has_no_violations() {
        let dag = Dag::build(
            &[
                ("U", "X"),
                ("U", "Y"),
                ("C1", "X"),
                ("C2", "X"),
                ("C3", "X"),
                ("X", "Y"),
            ],
            &["U"],
            None,
        )
        .unwrap();
        let findings = check_assumptions(&dag, "X", "Y", &["C1", "C2", "C3"]).unwrap();
        assert!(violations(&findings).is_empty());
        let not_checkable = findings
            .iter()
            .filter(|f| f.status == AssumptionStatus::NotCheckable)
            .count();
        assert_eq!(not_checkable, 2);
    }

    #[test]
    fn covariate_descending_from_exposure_is_flagged() {
        let dag = Dag::build(&[("X", "C1"), ("X", "Y")], &[], None).unwrap();
        let findings = check_assumptions(&dag, "X", "Y", &["C1"]).unwrap();
        let v = violations(&findings);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].assumption, Assumption::CovariatesNotCausedByExposure);
        assert!(matches!(&v[0].status, AssumptionStatus::Violated { detail } if detail.contains("C1")));
    }

    #[test]
    fn reverse_causation_is_flagged_with_path() {
        let dag = Dag::build(&[("Y", "M"), ("M", "X")], &[], None).unwrap();
        let findings = check_assumptions(&dag, "X", "Y", &[]).unwrap();
        let v = violations(&findings);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].assumption, Assumption::OutcomeDoesNotCauseExposure);
        assert!(matches!(&v[0].status, AssumptionStatus::Violated { detail } if detail.contains("Y -> M -> X")));
    }

    #[test]
    fn selection_descending_from_exposure_is_flagged() {
        let dag = Dag::build(&[("X", "S"), ("X", "Y")], &[], Some("S")).unwrap();
        let findings = check_assumptions(&dag, "X", "Y", &[]).unwrap();
        let v = violations(&findings);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].assumption, Assumption::SelectionNotCausedByExposure);
    }
}
