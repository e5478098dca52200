//! The two-scenario Monte Carlo study: rejection-sampled data generation
//! and the stratified summary of outcome-model p-values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::stats::{fit_ols, max_abs_off_diagonal, mean, pearson_corr_matrix, sample_sd, Dataset,
    RngStream};

use super::error::SimError;

/// Number of measured covariates in the study design.
const N_COVARIATES: usize = 3;

/// Parameters of one scenario/sample-size cell.
///
/// Scenario 1 has one unmeasured confounder and three instrument
/// covariates; scenario 2 has three confounder covariates and nothing
/// unmeasured. In both, the exposure has no effect on the outcome, so the
/// unadjusted slope of outcome on exposure is pure bias.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub scenario: u8,
    pub n: usize,
    /// Number of accepted datasets.
    pub n_iter: usize,
    pub seed: u64,
    /// Stratification threshold on the absolute unadjusted slope.
    pub bias_cutoff: f64,
    /// Threshold for both the acceptance gate and the outcome-model counts.
    pub alpha: f64,
    /// Acceptance gate: covariates must be nearly uncorrelated.
    pub corr_cap: f64,
    /// Guard on the rejection loop.
    pub max_attempts_per_accept: u64,
}

impl ScenarioSpec {
    pub fn new(scenario: u8, n: usize, n_iter: usize, seed: u64) -> Self {
        Self {
            scenario,
            n,
            n_iter,
            seed,
            bias_cutoff: 0.2,
            alpha: 0.05,
            corr_cap: 0.05,
            max_attempts_per_accept: 1_000_000,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.scenario != 1 && self.scenario != 2 {
            return Err(SimError::BadSpec(format!(
                "scenario must be 1 or 2, got {}",
                self.scenario
            )));
        }
        if self.n < 50 {
            return Err(SimError::BadSpec(format!(
                "sample size must be at least 50, got {}",
                self.n
            )));
        }
        if self.n_iter < 1 {
            return Err(SimError::BadSpec("n_iter must be at least 1".into()));
        }
        if self.bias_cutoff < 0.0 {
            return Err(SimError::BadSpec("bias_cutoff must be nonnegative".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(SimError::BadSpec("alpha must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// P-values and bias of one accepted dataset. Model `k` regresses on the
/// first `k` covariates, so the inner vectors have lengths 1, 2, 3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateOutcome {
    /// Covariate p-values in the exposure models; all below `alpha` by the
    /// acceptance construction.
    pub p_exposure_models: [Vec<f64>; 3],
    /// Covariate p-values in the outcome models (exposure term excluded).
    pub p_outcome_models: [Vec<f64>; 3],
    /// Unadjusted slope of the outcome on the exposure.
    pub bias: f64,
}

/// Draws one accepted dataset, mirroring the reference protocol: standard
/// normal covariates (plus a confounder in scenario 1) resampled until
/// nearly uncorrelated, effects drawn uniformly and rescaled so the
/// systematic part explains a uniform share of unit variance, and the whole
/// draw rejected unless every covariate clears the exposure-model gate in
/// all three nested regressions.
pub fn generate_replicate(
    spec: &ScenarioSpec,
    rng: &mut RngStream,
) -> Result<(Dataset, ReplicateOutcome), SimError> {
    spec.validate()?;
    let n = spec.n;
    let mut attempts = 0u64;
    loop {
        attempts += 1;
        if attempts > spec.max_attempts_per_accept {
            return Err(SimError::MaxAttemptsExceeded {
                max: spec.max_attempts_per_accept,
            });
        }

        let mut z = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        for col in &mut z {
            rng.fill_standard_normal(col);
        }
        let mut u = vec![0.0; n];
        rng.fill_standard_normal(&mut u);

        let corr_cols: Vec<&[f64]> = if spec.scenario == 1 {
            vec![&z[0], &z[1], &z[2], &u]
        } else {
            vec![&z[0], &z[1], &z[2]]
        };
        let corr = pearson_corr_matrix(&corr_cols)?;
        if max_abs_off_diagonal(&corr) > spec.corr_cap {
            continue;
        }

        let beta_z = [
            rng.uniform(-1.0, 1.0)?,
            rng.uniform(-1.0, 1.0)?,
            rng.uniform(-1.0, 1.0)?,
        ];
        let beta_u = rng.uniform(0.0, 1.0)? * f64::from(spec.scenario == 1);

        let mut x_sys = vec![0.0; n];
        for i in 0..n {
            x_sys[i] = beta_z[0] * z[0][i] + beta_z[1] * z[1][i] + beta_z[2] * z[2][i]
                + beta_u * u[i];
        }
        let r2_x = rng.uniform(0.05, 0.95)?;
        let x = match rescale_with_noise(&x_sys, r2_x, rng) {
            Some(x) => x,
            None => continue,
        };

        let p_exposure_models = match nested_exposure_pvalues(&z, &x) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if p_exposure_models
            .iter()
            .flatten()
            .any(|&p| p >= spec.alpha)
        {
            continue;
        }

        let gamma_scale = f64::from(spec.scenario == 2);
        let gamma_z = [
            rng.uniform(-1.0, 1.0)? * gamma_scale,
            rng.uniform(-1.0, 1.0)? * gamma_scale,
            rng.uniform(-1.0, 1.0)? * gamma_scale,
        ];
        let gamma_u = rng.uniform(0.0, 1.0)? * f64::from(spec.scenario == 1);
        let mut y_sys = vec![0.0; n];
        for i in 0..n {
            y_sys[i] = gamma_z[0] * z[0][i] + gamma_z[1] * z[1][i] + gamma_z[2] * z[2][i]
                + gamma_u * u[i];
        }
        let r2_y = rng.uniform(0.05, 0.95)?;
        let y = match rescale_with_noise(&y_sys, r2_y, rng) {
            Some(y) => y,
            None => continue,
        };

        let p_outcome_models = match nested_outcome_pvalues(&z, &x, &y) {
            Ok(p) => p,
            Err(_) => continue,
        };

        let bias = unadjusted_slope(&x, &y);

        let data = Dataset::new(vec![
            ("x".into(), x),
            ("y".into(), y),
            ("z1".into(), z[0].clone()),
            ("z2".into(), z[1].clone()),
            ("z3".into(), z[2].clone()),
        ])?;
        return Ok((
            data,
            ReplicateOutcome {
                p_exposure_models,
                p_outcome_models,
                bias,
            },
        ));
    }
}

/// Scales the systematic component by its sample standard deviation so it
/// explains `r2` of unit variance, then adds Gaussian noise carrying the
/// remainder. `None` when the component is degenerate.
fn rescale_with_noise(systematic: &[f64], r2: f64, rng: &mut RngStream) -> Option<Vec<f64>> {
    let sd = sample_sd(systematic);
    if sd <= 0.0 || sd.is_nan() {
        return None;
    }
    let signal = (r2).sqrt() / sd;
    let noise_sd = (1.0 - r2).sqrt();
    Some(
        systematic
            .iter()
            .map(|&v| v * signal + noise_sd * rng.standard_normal())
            .collect(),
    )
}

fn nested_exposure_pvalues(z: &[Vec<f64>; 3], x: &[f64]) -> Result<[Vec<f64>; 3], SimError> {
    let names = ["z1", "z2", "z3"];
    let mut out: [Vec<f64>; 3] = Default::default();
    for k in 1..=N_COVARIATES {
        let design: Vec<(&str, &[f64])> = (0..k).map(|j| (names[j], z[j].as_slice())).collect();
        let fit = fit_ols(&design, x, true)?;
        out[k - 1] = (0..k).map(|j| fit.p_value(names[j]).unwrap()).collect();
    }
    Ok(out)
}

fn nested_outcome_pvalues(
    z: &[Vec<f64>; 3],
    x: &[f64],
    y: &[f64],
) -> Result<[Vec<f64>; 3], SimError> {
    let names = ["z1", "z2", "z3"];
    let mut out: [Vec<f64>; 3] = Default::default();
    for k in 1..=N_COVARIATES {
        let mut design: Vec<(&str, &[f64])> = vec![("x", x)];
        design.extend((0..k).map(|j| (names[j], z[j].as_slice())));
        let fit = fit_ols(&design, y, true)?;
        out[k - 1] = (0..k).map(|j| fit.p_value(names[j]).unwrap()).collect();
    }
    Ok(out)
}

fn unadjusted_slope(x: &[f64], y: &[f64]) -> f64 {
    let mx = mean(x);
    let my = mean(y);
    let mut num = 0.0;
    let mut den = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        num += (xi - mx) * (yi - my);
        den += (xi - mx) * (xi - mx);
    }
    num / den
}

/// Replicate outcomes for a contiguous index range, one stream per index,
/// evaluated in parallel. The per-index streams make the result identical
/// however the range is split or scheduled.
pub fn replicate_outcomes(
    spec: &ScenarioSpec,
    range: std::ops::Range<u64>,
) -> Result<Vec<ReplicateOutcome>, SimError> {
    spec.validate()?;
    range
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(spec.seed, i);
            generate_replicate(spec, &mut rng).map(|(_, outcome)| outcome)
        })
        .collect()
}

/// Which side of the bias cutoff a replicate fell on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasStratum {
    AboveCutoff,
    AtOrBelowCutoff,
}

/// One row of the stratified summary: for `k` covariates in the adjustment
/// set, how many replicates had 0..=k covariates conditionally unassociated
/// with the outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowSummary {
    pub k: usize,
    pub counts: Vec<u64>,
    pub pct: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumSummary {
    pub scenario: u8,
    pub n: usize,
    pub stratum: BiasStratum,
    pub stratum_size: usize,
    pub rows: Vec<RowSummary>,
}

/// Aggregated Monte Carlo table for one scenario/sample-size cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioTable {
    pub spec: ScenarioSpec,
    pub strata: Vec<StratumSummary>,
}

/// Runs the full cell: `n_iter` accepted replicates, stratified by
/// unadjusted bias, with row counts of conditionally unassociated
/// covariates per adjustment-set size.
pub fn run_scenarios(spec: &ScenarioSpec) -> Result<ScenarioTable, SimError> {
    let outcomes = replicate_outcomes(spec, 0..spec.n_iter as u64)?;
    Ok(summarize(spec, &outcomes))
}

/// Order-independent aggregation of replicate outcomes.
pub fn summarize(spec: &ScenarioSpec, outcomes: &[ReplicateOutcome]) -> ScenarioTable {
    // counts[stratum][k-1][unassociated]
    let mut counts = [[[0u64; N_COVARIATES + 1]; N_COVARIATES]; 2];
    let mut sizes = [0usize; 2];
    for outcome in outcomes {
        let above = outcome.bias.abs() > spec.bias_cutoff;
        let s = usize::from(!above);
        sizes[s] += 1;
        for k in 1..=N_COVARIATES {
            let unassoc = outcome.p_outcome_models[k - 1]
                .iter()
                .filter(|&&p| p >= spec.alpha)
                .count();
            counts[s][k - 1][unassoc] += 1;
        }
    }
    let strata = [BiasStratum::AboveCutoff, BiasStratum::AtOrBelowCutoff]
        .into_iter()
        .enumerate()
        .map(|(s, stratum)| StratumSummary {
            scenario: spec.scenario,
            n: spec.n,
            stratum,
            stratum_size: sizes[s],
            rows: (1..=N_COVARIATES)
                .map(|k| {
                    let counts: Vec<u64> = counts[s][k - 1][..=k].to_vec();
                    let pct = counts
                        .iter()
                        .map(|&c| {
                            if sizes[s] == 0 {
                                0.0
                            } else {
                                100.0 * c as f64 / sizes[s] as f64
                            }
                        })
                        .collect();
                    RowSummary { k, counts, pct }
                })
                .collect(),
        })
        .collect();
    ScenarioTable { spec: *spec, strata }
}
