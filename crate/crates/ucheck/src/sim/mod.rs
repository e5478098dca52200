//! Monte Carlo harness: the two-scenario operating-characteristics study
//! and the two-covariate power calculation. Replicates run one independent
//! random stream per index, so results are identical under any scheduling
//! and any split of the index range.

mod error;
mod power;
mod scenario;

pub use error::SimError;
pub use power::{run_power, PowerResult, PowerSpec};
pub use scenario::{
    generate_replicate, replicate_outcomes, run_scenarios, summarize, BiasStratum,
    ReplicateOutcome, RowSummary, ScenarioSpec, StratumSummary, ScenarioTable,
};
