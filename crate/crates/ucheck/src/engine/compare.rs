//! Comparator methods: the marginal stability test and the subset-search
//! covariate-selection rules, both runnable against a graph (exact) or a
//! dataset (regression-based).

use serde::{Deserialize, Serialize};

use crate::graph::{d_separated, Dag};
use crate::stats::{fit_ols, standardize, Dataset};

use super::error::EngineError;
use super::test::TestConfig;

/// Outcome of the marginal stability test. There is deliberately no
/// "unconfounded" member: the test can reject stability but never assert it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilityVerdict {
    NotStablyUnconfounded,
    Inconclusive,
}

impl std::fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StabilityVerdict::NotStablyUnconfounded => "NotStablyUnconfounded",
            StabilityVerdict::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub config: TestConfig,
    pub probe: String,
    /// Recorded assumption: the probe variable is not a barren proxy (a
    /// variable associated with exposure and outcome that causes neither).
    pub assumes_not_barren_proxy: bool,
    pub p_exposure: f64,
    pub p_outcome_given_exposure: f64,
    pub verdict: StabilityVerdict,
}

/// Marginal stability test with probe variable `m`: the exposure-outcome
/// pair is declared not stably unconfounded when `m` is associated with the
/// exposure and with the outcome given the exposure. No baseline
/// conditioning set is used.
///
/// The caller must assert `m_not_barren_proxy`; the result is not
/// interpretable otherwise and the flag is recorded in the report.
pub fn pearl_stability_test(
    data: &Dataset,
    x: &str,
    y: &str,
    m: &str,
    config: &TestConfig,
    m_not_barren_proxy: bool,
) -> Result<StabilityReport, EngineError> {
    config.validate()?;
    if !m_not_barren_proxy {
        return Err(EngineError::BadConfig(
            "the stability test requires asserting that the probe variable is not a barren proxy"
                .into(),
        ));
    }
    if m == x || m == y {
        return Err(EngineError::RoleOverlap(m.to_string()));
    }
    let cc = data.complete_cases(&[x, y, m])?;
    let x_col = standardize(cc.column(x)?)?;
    let y_col = standardize(cc.column(y)?)?;
    let m_col = standardize(cc.column(m)?)?;

    let marginal = fit_ols(&[(m, &m_col)], &x_col, true)?;
    let p_exposure = marginal.p_value(m).unwrap();
    let conditional = fit_ols(&[(x, &x_col), (m, &m_col)], &y_col, true)?;
    let p_outcome_given_exposure = conditional.p_value(m).unwrap();

    let verdict = if p_exposure < config.alpha_dep && p_outcome_given_exposure < config.alpha_dep {
        StabilityVerdict::NotStablyUnconfounded
    } else {
        StabilityVerdict::Inconclusive
    };
    Ok(StabilityReport {
        config: *config,
        probe: m.to_string(),
        assumes_not_barren_proxy: m_not_barren_proxy,
        p_exposure,
        p_outcome_given_exposure,
        verdict,
    })
}

/// Where the subset-search rules read their conditional independencies from.
pub enum EntnerMode<'a> {
    /// Exact d-separation queries against a graph.
    Oracle(&'a Dag),
    /// Regression p-values against a dataset.
    Data(&'a Dataset),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntnerRule {
    /// Witness dependent on the outcome given `D`, independent given
    /// `D ∪ {x}`: the exposure causes the outcome and `D` suffices.
    RuleOne,
    /// Exposure independent of the outcome given `K`: no causal effect.
    RuleTwoScreening,
    /// Witness dependent on the exposure given `D` but independent of the
    /// outcome given `D`: no causal effect.
    RuleTwoWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntnerConclusion {
    ExposureCausesOutcome { valid_adjustment_set: Vec<String> },
    ExposureDoesNotCauseOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntnerFiring {
    pub rule: EntnerRule,
    pub witness: Option<String>,
    pub conditioning: Vec<String>,
    pub conclusion: EntnerConclusion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntnerReport {
    pub config: TestConfig,
    pub exposure: String,
    pub outcome: String,
    pub pool: Vec<String>,
    pub firings: Vec<EntnerFiring>,
    /// True when both causal conclusions fire; possible in finite samples
    /// even though the rules are mutually exclusive in the population. Such
    /// contradictions are surfaced, not resolved.
    pub contradictory: bool,
}

/// Default cap on `|V|` for the subset enumeration.
pub const ENTNER_SUBSET_CAP: usize = 12;

/// Enumerates every witness/subset combination of the candidate pool `v`
/// and reports each rule that fires. Exponential in `|v|`; capped.
pub fn entner_rules(
    mode: EntnerMode<'_>,
    x: &str,
    y: &str,
    v: &[&str],
    config: &TestConfig,
    subset_cap: usize,
) -> Result<EntnerReport, EngineError> {
    config.validate()?;
    if v.len() > subset_cap {
        return Err(EngineError::TooLarge {
            got: v.len(),
            cap: subset_cap,
        });
    }
    if v.contains(&x) || v.contains(&y) || x == y {
        return Err(EngineError::RoleOverlap(x.to_string()));
    }

    let queries: Box<dyn CiQueries> = match mode {
        EntnerMode::Oracle(dag) => Box::new(OracleQueries { dag }),
        EntnerMode::Data(data) => Box::new(DataQueries::prepare(data, x, y, v, config)?),
    };

    let mut firings = Vec::new();

    // Screening rule: exposure ⫫ outcome | K for any K ⊆ V.
    for k in subsets(v) {
        if queries.independent(x, y, &k)? {
            firings.push(EntnerFiring {
                rule: EntnerRule::RuleTwoScreening,
                witness: None,
                conditioning: owned(&k),
                conclusion: EntnerConclusion::ExposureDoesNotCauseOutcome,
            });
        }
    }

    // Witness rules: W against D ⊆ V \ {W}.
    for (i, w) in v.iter().enumerate() {
        let rest: Vec<&str> = v
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, s)| *s)
            .collect();
        for d in subsets(&rest) {
            if queries.dependent(w, y, &d)? {
                let mut dx = d.clone();
                dx.push(x);
                if queries.independent(w, y, &dx)? {
                    firings.push(EntnerFiring {
                        rule: EntnerRule::RuleOne,
                        witness: Some((*w).to_string()),
                        conditioning: owned(&d),
                        conclusion: EntnerConclusion::ExposureCausesOutcome {
                            valid_adjustment_set: owned(&d),
                        },
                    });
                }
            }
            if queries.dependent(w, x, &d)? && queries.independent(w, y, &d)? {
                firings.push(EntnerFiring {
                    rule: EntnerRule::RuleTwoWitness,
                    witness: Some((*w).to_string()),
                    conditioning: owned(&d),
                    conclusion: EntnerConclusion::ExposureDoesNotCauseOutcome,
                });
            }
        }
    }

    let causes = firings
        .iter()
        .any(|f| matches!(f.conclusion, EntnerConclusion::ExposureCausesOutcome { .. }));
    let not_causes = firings
        .iter()
        .any(|f| f.conclusion == EntnerConclusion::ExposureDoesNotCauseOutcome);
    Ok(EntnerReport {
        config: *config,
        exposure: x.to_string(),
        outcome: y.to_string(),
        pool: owned(v),
        firings,
        contradictory: causes && not_causes,
    })
}

fn owned(set: &[&str]) -> Vec<String> {
    set.iter().map(|s| (*s).to_string()).collect()
}

/// All subsets, smallest first, in a deterministic order.
fn subsets<'a>(items: &[&'a str]) -> Vec<Vec<&'a str>> {
    let mut out: Vec<Vec<&'a str>> = (0..(1usize << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| *s)
                .collect()
        })
        .collect();
    out.sort_by_key(|s| s.len());
    out
}

/// Conditional (in)dependence queries; in data mode the two are asymmetric
/// because dependence and independence use different thresholds.
trait CiQueries {
    fn dependent(&self, a: &str, b: &str, given: &[&str]) -> Result<bool, EngineError>;
    fn independent(&self, a: &str, b: &str, given: &[&str]) -> Result<bool, EngineError>;
}

struct OracleQueries<'a> {
    dag: &'a Dag,
}

impl CiQueries for OracleQueries<'_> {
    fn dependent(&self, a: &str, b: &str, given: &[&str]) -> Result<bool, EngineError> {
        Ok(!d_separated(self.dag, &[a], &[b], given)?)
    }

    fn independent(&self, a: &str, b: &str, given: &[&str]) -> Result<bool, EngineError> {
        Ok(d_separated(self.dag, &[a], &[b], given)?)
    }
}

struct DataQueries {
    columns: std::collections::HashMap<String, Vec<f64>>,
    alpha_dep: f64,
    alpha_indep: f64,
}

impl DataQueries {
    fn prepare(
        data: &Dataset,
        x: &str,
        y: &str,
        v: &[&str],
        config: &TestConfig,
    ) -> Result<Self, EngineError> {
        let mut roles: Vec<&str> = vec![x, y];
        roles.extend_from_slice(v);
        let cc = data.complete_cases(&roles)?;
        let mut columns = std::collections::HashMap::new();
        for name in roles {
            columns.insert(name.to_string(), standardize(cc.column(name)?)?);
        }
        Ok(Self {
            columns,
            alpha_dep: config.alpha_dep,
            alpha_indep: config.alpha_indep,
        })
    }

    fn p_value(&self, a: &str, b: &str, given: &[&str]) -> Result<f64, EngineError> {
        let response = &self.columns[b];
        let mut design: Vec<(&str, &[f64])> = vec![(a, &self.columns[a])];
        for g in given {
            design.push((g, &self.columns[*g]));
        }
        let fit = fit_ols(&design, response, true)?;
        Ok(fit.p_value(a).unwrap())
    }
}

impl CiQueries for DataQueries {
    fn dependent(&self, a: &str, b: &str, given: &[&str]) -> Result<bool, EngineError> {
        Ok(self.p_value(a, b, given)? < self.alpha_dep)
    }

    fn independent(&self, a: &str, b: &str, given: &[&str]) -> Result<bool, EngineError> {
        Ok(self.p_value(a, b, given)? >= self.alpha_indep)
    }
}
