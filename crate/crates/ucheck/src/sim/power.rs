//! Power calculation for detecting residual confounding with two covariates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::stats::{fit_ols, RngStream};

use super::error::SimError;

/// Parameters of the power simulation.
///
/// The design assumes the entire exposure-outcome association is due to an
/// unmeasured confounder: the exposure loads on two correlated covariates
/// plus the confounder, the outcome on the confounder alone, and both get
/// residual noise sized so their variances are exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSpec {
    pub n: usize,
    /// Loading of the first covariate on the exposure.
    pub beta1: f64,
    /// Loading of the second covariate on the exposure.
    pub beta2: f64,
    /// Confounded exposure-outcome coefficient; the confounder enters both
    /// equations with loading `sqrt(gamma1)`.
    pub gamma1: f64,
    /// Correlation between the two covariates.
    pub rho: f64,
    pub n_iter: usize,
    pub seed: u64,
    pub ci_level: f64,
}

impl PowerSpec {
    pub fn new(beta1: f64, beta2: f64, gamma1: f64, rho: f64, seed: u64) -> Self {
        Self {
            n: 2562,
            beta1,
            beta2,
            gamma1,
            rho,
            n_iter: 20_000,
            seed,
            ci_level: 0.95,
        }
    }

    /// Variance of the systematic covariate part of the exposure.
    pub fn systematic_variance(&self) -> f64 {
        self.beta1 * self.beta1
            + self.beta2 * self.beta2
            + 2.0 * self.beta1 * self.beta2 * self.rho
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.n < 10 {
            return Err(SimError::BadSpec("n must be at least 10".into()));
        }
        if self.n_iter < 1 {
            return Err(SimError::BadSpec("n_iter must be at least 1".into()));
        }
        if !(-1.0..1.0).contains(&self.rho) {
            return Err(SimError::BadSpec(format!(
                "covariate correlation must lie in (-1, 1), got {}",
                self.rho
            )));
        }
        if !(0.0..1.0).contains(&self.gamma1) {
            return Err(SimError::BadSpec(format!(
                "gamma1 must lie in [0, 1), got {}",
                self.gamma1
            )));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(SimError::BadSpec("ci_level must lie in (0, 1)".into()));
        }
        let exposure_resid = 1.0 - self.systematic_variance() - self.gamma1;
        if exposure_resid < 0.0 {
            return Err(SimError::NegativeResidualVariance(format!(
                "1 - Var[systematic] - gamma1 = {exposure_resid}"
            )));
        }
        Ok(())
    }
}

/// Detection probabilities over the simulated replicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerResult {
    pub spec: PowerSpec,
    /// Proportion of replicates where both covariate confidence intervals
    /// exclude zero.
    pub prob_both: f64,
    /// Proportion where at least one does.
    pub prob_at_least_one: f64,
    /// Marginal detection rate of each covariate.
    pub rejection_rate_first: f64,
    pub rejection_rate_second: f64,
}

/// Runs the power simulation: per replicate, draw the cohort, fit the
/// outcome on the exposure and both covariates, and record which covariate
/// confidence intervals exclude zero.
pub fn run_power(spec: &PowerSpec) -> Result<PowerResult, SimError> {
    spec.validate()?;
    let exposure_resid_sd = (1.0 - spec.systematic_variance() - spec.gamma1).sqrt();
    let outcome_resid_sd = (1.0 - spec.gamma1).sqrt();
    let confounder_loading = spec.gamma1.sqrt();
    let cross = (1.0 - spec.rho * spec.rho).sqrt();
    let alpha = 1.0 - spec.ci_level;

    let hits: Vec<(bool, bool)> = (0..spec.n_iter as u64)
        .into_par_iter()
        .map(|i| -> Result<(bool, bool), SimError> {
            // returns (first covariate detected, second detected)
            let mut rng = RngStream::new(spec.seed, i);
            let n = spec.n;
            let mut a1 = vec![0.0; n];
            let mut a2 = vec![0.0; n];
            let mut x = vec![0.0; n];
            let mut y = vec![0.0; n];
            for j in 0..n {
                let e1 = rng.standard_normal();
                let e2 = rng.standard_normal();
                let u = rng.standard_normal();
                a1[j] = e1;
                a2[j] = spec.rho * e1 + cross * e2;
                x[j] = spec.beta1 * a1[j]
                    + spec.beta2 * a2[j]
                    + confounder_loading * u
                    + exposure_resid_sd * rng.standard_normal();
                y[j] = confounder_loading * u + outcome_resid_sd * rng.standard_normal();
            }
            let design: Vec<(&str, &[f64])> = vec![("x", &x), ("a1", &a1), ("a2", &a2)];
            let fit = fit_ols(&design, &y, true)?;
            // a t confidence interval excludes zero exactly when the
            // two-sided p-value drops below 1 - ci_level
            let d1 = fit.p_value("a1").unwrap() < alpha;
            let d2 = fit.p_value("a2").unwrap() < alpha;
            Ok((d1, d2))
        })
        .collect::<Result<_, _>>()?;

    let frac = |count: usize| count as f64 / spec.n_iter as f64;
    let both = hits.iter().filter(|(a, b)| *a && *b).count();
    let at_least_one = hits.iter().filter(|(a, b)| *a || *b).count();
    let first = hits.iter().filter(|(a, _)| *a).count();
    let second = hits.iter().filter(|(_, b)| *b).count();
    Ok(PowerResult {
        spec: *spec,
        prob_both: frac(both),
        prob_at_least_one: frac(at_least_one),
        rejection_rate_first: frac(first),
        rejection_rate_second: frac(second),
    })
}
