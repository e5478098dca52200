//! Sensitivity analyses around the main test: faithfulness probes, the
//! exogenous-covariate falsification test, and the negative-control-outcome
//! contrast.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::stats::{fit_ols, standardize, Dataset, OlsFit};

use super::error::EngineError;
use super::test::{run_test, ExposureEffect, TestConfig, TestReport};

/// A witness covariate re-examined under weakened adjustment.
///
/// If the witness stays unassociated with the outcome even when known
/// strong confounders are excluded, the original independence may reflect a
/// faithfulness violation rather than a valid adjustment set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeWitness {
    pub covariate: String,
    /// p-value under the restricted simultaneous model (drop set excluded);
    /// absent when the witness itself was dropped.
    pub p_restricted: Option<f64>,
    /// p-value under the exposure-plus-this-covariate-only model.
    pub p_bivariate: Option<f64>,
    pub suspect_restricted: bool,
    pub suspect_bivariate: bool,
    /// Overall flag; driven by the restricted model.
    pub faithfulness_suspect: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub config: TestConfig,
    pub dropped: Vec<String>,
    pub base: TestReport,
    /// Outcome model refit on the restricted covariate set.
    pub restricted_model: OlsFit,
    pub restricted_exposure_effect: ExposureEffect,
    pub witnesses: Vec<ProbeWitness>,
    pub flagged: Vec<String>,
}

/// Refits the outcome model without `drop` (restricted simultaneous model)
/// and, per witness of the base test, with that witness alone (bivariate
/// model). Witnesses whose outcome p-value stays at or above `alpha_indep`
/// in the restricted model are flagged as faithfulness-suspect.
pub fn faithfulness_probe(
    data: &Dataset,
    x: &str,
    y: &str,
    a: &[&str],
    drop: &[&str],
    config: &TestConfig,
) -> Result<ProbeReport, EngineError> {
    for d in drop {
        if !a.contains(d) {
            return Err(EngineError::DropNotSubset((*d).to_string()));
        }
    }
    let base = run_test(data, x, y, a, config)?;

    // All fits share the complete-case sample of the full variable set so
    // models stay comparable.
    let mut roles: Vec<&str> = vec![x, y];
    roles.extend_from_slice(a);
    let cc = data.complete_cases(&roles)?;
    let std_col = |name: &str| -> Result<Vec<f64>, EngineError> {
        Ok(standardize(cc.column(name)?)?)
    };
    let x_col = std_col(x)?;
    let y_col = std_col(y)?;
    let kept: Vec<&str> = a.iter().filter(|z| !drop.contains(z)).copied().collect();
    let kept_cols: Vec<Vec<f64>> = kept.iter().map(|z| std_col(z)).collect::<Result<_, _>>()?;

    let mut design: Vec<(&str, &[f64])> = vec![(x, &x_col)];
    design.extend(kept.iter().zip(&kept_cols).map(|(z, c)| (*z, c.as_slice())));
    let restricted_model = fit_ols(&design, &y_col, true)?;
    let xi = restricted_model.term_index(x).unwrap();
    let (lo, hi) = restricted_model
        .confidence_interval(x, config.ci_level)
        .unwrap();
    let restricted_exposure_effect = ExposureEffect {
        coefficient: restricted_model.coefficients[xi],
        ci_lower: lo,
        ci_upper: hi,
        ci_level: config.ci_level,
        p_value: restricted_model.p_values[xi],
    };

    let mut witnesses = Vec::new();
    for w in &base.witnesses {
        let p_restricted = restricted_model.p_value(w);
        let p_bivariate = if drop.contains(&w.as_str()) {
            None
        } else {
            let w_col = std_col(w)?;
            let design: Vec<(&str, &[f64])> = vec![(x, &x_col), (w, &w_col)];
            let fit = fit_ols(&design, &y_col, true)?;
            fit.p_value(w)
        };
        let suspect_restricted = p_restricted.map(|p| p >= config.alpha_indep).unwrap_or(false);
        let suspect_bivariate = p_bivariate.map(|p| p >= config.alpha_indep).unwrap_or(false);
        witnesses.push(ProbeWitness {
            covariate: w.clone(),
            p_restricted,
            p_bivariate,
            suspect_restricted,
            suspect_bivariate,
            faithfulness_suspect: suspect_restricted,
        });
    }
    let flagged = witnesses
        .iter()
        .filter(|w| w.faithfulness_suspect)
        .map(|w| w.covariate.clone())
        .collect();

    Ok(ProbeReport {
        config: *config,
        dropped: drop.iter().map(|d| (*d).to_string()).collect(),
        base,
        restricted_model,
        restricted_exposure_effect,
        witnesses,
        flagged,
    })
}

/// Decision logic of the probe over already-computed p-values, for use when
/// only the model summaries are available. Keys of both maps must coincide
/// (the witnesses under examination).
pub fn probe_from_pvalues(
    p_restricted: &BTreeMap<String, f64>,
    p_bivariate: &BTreeMap<String, f64>,
    config: &TestConfig,
) -> Result<Vec<ProbeWitness>, EngineError> {
    config.validate()?;
    for k in p_restricted.keys() {
        if !p_bivariate.contains_key(k) {
            return Err(EngineError::KeyMismatch(k.clone()));
        }
    }
    for k in p_bivariate.keys() {
        if !p_restricted.contains_key(k) {
            return Err(EngineError::KeyMismatch(k.clone()));
        }
    }
    Ok(p_restricted
        .iter()
        .map(|(name, &pr)| {
            let pb = p_bivariate[name];
            ProbeWitness {
                covariate: name.clone(),
                p_restricted: Some(pr),
                p_bivariate: Some(pb),
                suspect_restricted: pr >= config.alpha_indep,
                suspect_bivariate: pb >= config.alpha_indep,
                faithfulness_suspect: pr >= config.alpha_indep,
            }
        })
        .collect())
}

/// Verdict of the falsification test available when the tested covariate is
/// known to be exogenous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FalsificationVerdict {
    /// The exogenous covariate is conditionally associated with the
    /// outcome: the conditioning set is invalid.
    AdjustmentSetInvalid,
    /// No conditional association detected.
    NotFalsified,
    /// The covariate is not associated with the exposure, so it cannot be
    /// used for the test.
    Ineligible,
}

impl std::fmt::Display for FalsificationVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FalsificationVerdict::AdjustmentSetInvalid => "AdjustmentSetInvalid",
            FalsificationVerdict::NotFalsified => "NotFalsified",
            FalsificationVerdict::Ineligible => "Ineligible",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsificationReport {
    pub config: TestConfig,
    pub exogenous: String,
    pub conditioning: Vec<String>,
    pub n_used: usize,
    pub p_exposure: f64,
    pub p_outcome: f64,
    /// The verdict concerns the conditioning set `C`, not `C ∪ {z}`.
    pub verdict: FalsificationVerdict,
}

/// Falsification test for conditioning set `c` using an exogenous covariate
/// `z_exog` outside it. An exogenous covariate cannot sit as a collider on
/// a backdoor path, so conditional association with the outcome given the
/// exposure and `c` falsifies `c` outright.
pub fn exogenous_falsification(
    data: &Dataset,
    x: &str,
    y: &str,
    z_exog: &str,
    c: &[&str],
    config: &TestConfig,
) -> Result<FalsificationReport, EngineError> {
    config.validate()?;
    if c.contains(&z_exog) || z_exog == x || z_exog == y {
        return Err(EngineError::RoleOverlap(z_exog.to_string()));
    }
    let mut roles: Vec<&str> = vec![x, y, z_exog];
    roles.extend_from_slice(c);
    let cc = data.complete_cases(&roles)?;
    let std_col = |name: &str| -> Result<Vec<f64>, EngineError> {
        Ok(standardize(cc.column(name)?)?)
    };
    let x_col = std_col(x)?;
    let y_col = std_col(y)?;
    let z_col = std_col(z_exog)?;
    let c_cols: Vec<Vec<f64>> = c.iter().map(|v| std_col(v)).collect::<Result<_, _>>()?;

    let mut design: Vec<(&str, &[f64])> = vec![(z_exog, &z_col)];
    design.extend(c.iter().zip(&c_cols).map(|(v, col)| (*v, col.as_slice())));
    let exposure_fit = fit_ols(&design, &x_col, true)?;
    let p_exposure = exposure_fit.p_value(z_exog).unwrap();

    let mut design_y: Vec<(&str, &[f64])> = vec![(x, &x_col), (z_exog, &z_col)];
    design_y.extend(c.iter().zip(&c_cols).map(|(v, col)| (*v, col.as_slice())));
    let outcome_fit = fit_ols(&design_y, &y_col, true)?;
    let p_outcome = outcome_fit.p_value(z_exog).unwrap();

    let verdict = if p_exposure >= config.alpha_dep {
        FalsificationVerdict::Ineligible
    } else if p_outcome < config.alpha_indep {
        FalsificationVerdict::AdjustmentSetInvalid
    } else {
        FalsificationVerdict::NotFalsified
    };

    Ok(FalsificationReport {
        config: *config,
        exogenous: z_exog.to_string(),
        conditioning: c.iter().map(|v| (*v).to_string()).collect(),
        n_used: cc.n_rows(),
        p_exposure,
        p_outcome,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectEstimate {
    pub coefficient: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeControlReport {
    pub config: TestConfig,
    pub negative_control: String,
    pub adjustment: Vec<String>,
    pub n_used: usize,
    /// Exposure contrast across the negative control without adjustment.
    pub unadjusted: EffectEstimate,
    /// The same contrast conditional on the adjustment set.
    pub adjusted: EffectEstimate,
}

/// Contrasts the exposure across a negative control outcome before and
/// after adjustment. The exposure and covariates are standardized; the
/// negative control enters untransformed so binary group codings keep their
/// mean-difference interpretation.
pub fn negative_control_check(
    data: &Dataset,
    x: &str,
    nco: &str,
    a: &[&str],
    config: &TestConfig,
) -> Result<NegativeControlReport, EngineError> {
    config.validate()?;
    if nco == x || a.contains(&nco) || a.contains(&x) {
        return Err(EngineError::RoleOverlap(nco.to_string()));
    }
    let mut roles: Vec<&str> = vec![x, nco];
    roles.extend_from_slice(a);
    let cc = data.complete_cases(&roles)?;
    let std_col = |name: &str| -> Result<Vec<f64>, EngineError> {
        Ok(standardize(cc.column(name)?)?)
    };
    let x_col = std_col(x)?;
    let nco_col = cc.column(nco)?.to_vec();
    let a_cols: Vec<Vec<f64>> = a.iter().map(|v| std_col(v)).collect::<Result<_, _>>()?;

    let estimate = |fit: &OlsFit| -> EffectEstimate {
        let (lo, hi) = fit.confidence_interval(nco, config.ci_level).unwrap();
        EffectEstimate {
            coefficient: fit.coefficient(nco).unwrap(),
            ci_lower: lo,
            ci_upper: hi,
            p_value: fit.p_value(nco).unwrap(),
        }
    };

    let design: Vec<(&str, &[f64])> = vec![(nco, &nco_col)];
    let unadjusted = estimate(&fit_ols(&design, &x_col, true)?);

    let mut design_adj: Vec<(&str, &[f64])> = vec![(nco, &nco_col)];
    design_adj.extend(a.iter().zip(&a_cols).map(|(v, c)| (*v, c.as_slice())));
    let adjusted = estimate(&fit_ols(&design_adj, &x_col, true)?);

    Ok(NegativeControlReport {
        config: *config,
        negative_control: nco.to_string(),
        adjustment: a.iter().map(|v| (*v).to_string()).collect(),
        n_used: cc.n_rows(),
        unadjusted,
        adjusted,
    })
}
