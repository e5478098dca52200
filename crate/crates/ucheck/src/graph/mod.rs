//! Structural causal-graph engine: DAG construction, d-separation, the
//! backdoor criterion, the certification oracle, biasing-path
//! classification, and a constrained random-DAG generator.

mod assumptions;
mod backdoor;
mod dag;
mod dsep;
mod error;
mod oracle;
mod paths;
mod random;

pub use assumptions::{
    check_assumptions, violations, Assumption, AssumptionFinding, AssumptionStatus,
};
pub use backdoor::is_valid_backdoor_set;
pub use dag::Dag;
pub use dsep::{d_separated, d_separated_bruteforce, ENUMERATION_CAP};
pub use error::GraphError;
pub use oracle::{certification_oracle, EligibleCovariate, OracleReport, OracleVerdict};
pub use paths::{classify_biasing_paths, PathForm, PathRecord};
pub use random::{random_assumption_dag, RandomInstance};
