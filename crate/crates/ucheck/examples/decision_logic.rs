//! Verdicts straight from p-value maps, using the cohort analysis of
//! childhood growth and adult cognition as the worked fixture: eight
//! covariates, two simultaneous regressions, three certifying witnesses.
//!
//! ```bash
//! cargo run --example decision_logic
//! ```

use std::collections::BTreeMap;

use ucheck::engine::{evaluate_conditions, probe_from_pvalues, TestConfig};

fn map(entries: &[(&str, f64)]) -> BTreeMap<String, f64> {
    entries.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn main() {
    // exposure-model and outcome-model p-values per covariate
    let p_exposure = map(&[
        ("sep_birth", 9.9e-6),
        ("maternal_schooling", 6e-4),
        ("asset_index", 1.2e-14),
        ("maternal_age", 0.6219),
        ("maternal_height", 1.3e-33),
        ("genetic_score", 1.3e-24),
        ("sex", 6.9e-7),
        ("birthweight", 1.7e-58),
    ]);
    let p_outcome = map(&[
        ("sep_birth", 2.7e-9),
        ("maternal_schooling", 5e-19),
        ("asset_index", 2.1e-16),
        ("maternal_age", 0.8050),
        ("maternal_height", 0.2673),
        ("genetic_score", 0.2821),
        ("sex", 0.0003),
        ("birthweight", 0.2814),
    ]);

    let config = TestConfig::default();
    let (verdict, witnesses) = evaluate_conditions(&p_exposure, &p_outcome, &config).unwrap();
    println!("verdict: {verdict}");
    println!("witnesses: {witnesses:?}");
    println!("(maternal_age is ineligible: not exposure-associated)\n");

    // faithfulness probe: the same witnesses re-examined with the
    // socioeconomic covariates excluded, and in bivariate fits
    let p_restricted = map(&[
        ("maternal_height", 0.0064),
        ("genetic_score", 0.0032),
        ("birthweight", 0.8271),
    ]);
    let p_bivariate = map(&[
        ("maternal_height", 0.0253),
        ("genetic_score", 0.017),
        ("birthweight", 0.2890),
    ]);
    let probe = probe_from_pvalues(&p_restricted, &p_bivariate, &config).unwrap();
    for w in &probe {
        println!(
            "{}: restricted p {:.4}, bivariate p {:.4} -> faithfulness suspect: {}",
            w.covariate,
            w.p_restricted.unwrap(),
            w.p_bivariate.unwrap(),
            w.faithfulness_suspect
        );
    }
}
