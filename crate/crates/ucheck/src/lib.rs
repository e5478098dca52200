//! Empirical checks for whether a candidate covariate set is a valid
//! adjustment set for an exposure–outcome effect.
//!
//! The core idea: a covariate that is associated with the exposure given the
//! other covariates (condition (i)) and independent of the outcome given the
//! exposure and the other covariates (condition (ii)) certifies the whole set
//! as a valid adjustment set; if every exposure-associated covariate stays
//! outcome-associated, the set is invalid or minimally sufficient. The crate
//! provides this check at two levels, plus the machinery around it:
//!
//! - [`graph`] — structural level: DAGs, d-separation, the backdoor
//!   criterion, an exact oracle for the certification logic, a biasing-path
//!   classifier, and a constrained random-DAG generator for property tests.
//! - [`stats`] — numerical kernels: OLS with t tests, Student-t tails,
//!   standardization, correlation, seeded random streams, CSV ingestion.
//! - [`engine`] — data level: the regression-based test, faithfulness
//!   probes, exogenous-covariate falsification, a negative-control-outcome
//!   check, and comparator methods (marginal stability test, subset-search
//!   rules).
//! - [`sim`] — Monte Carlo calibration of the test's operating
//!   characteristics and a power calculation for the two-covariate design.
//! - [`cli`] — the `ucheck` command-line front end over all of the above.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example oracle_check          # structural oracle on two DAG scenarios
//! cargo run --example adjustment_test       # data-level test on synthetic cohorts
//! cargo run --example decision_logic        # verdicts straight from p-values
//! cargo run --example faithfulness_probe    # restricted-model sensitivity analysis
//! cargo run --example path_forms            # biasing-path classification
//! cargo run --example negative_control      # negative-control-outcome contrast
//! cargo run --example comparators           # stability test and subset-search rules
//! cargo run --example simulation_study      # Monte Carlo operating characteristics
//! cargo run --example power_analysis        # power for the two-covariate design
//! ```
//!
//! The same functionality is scriptable through the thin `ucheck` binary;
//! see the crate README for the subcommand reference.

pub mod cli;
pub mod engine;
pub mod graph;
pub mod sim;
pub mod stats;
