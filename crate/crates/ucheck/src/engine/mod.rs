//! Data-level machinery: the regression-based adjustment-set test, its
//! decision logic, faithfulness probes, the exogenous-covariate
//! falsification test, a negative-control-outcome check, and comparator
//! methods.

mod compare;
mod error;
mod probe;

pub use compare::{
    entner_rules, pearl_stability_test, EntnerConclusion, EntnerFiring, EntnerMode, EntnerReport,
    EntnerRule, StabilityReport, StabilityVerdict, ENTNER_SUBSET_CAP,
};
pub use error::EngineError;
pub use probe::{
    exogenous_falsification, faithfulness_probe, negative_control_check, probe_from_pvalues,
    EffectEstimate, FalsificationReport, FalsificationVerdict, NegativeControlReport, ProbeReport,
    ProbeWitness,
};
pub use test::{
    evaluate_conditions, run_test, ConditionRecord, ExposureEffect, ReducedSet, TestConfig,
    TestReport, TestVerdict,
};
