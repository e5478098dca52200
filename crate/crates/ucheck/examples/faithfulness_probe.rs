//! Probing whether a witness's independence is trustworthy: refit without
//! the strongest confounders and expect the witness to turn
//! outcome-associated; if it stays flat, suspect a faithfulness violation.
//!
//! ```bash
//! cargo run --example faithfulness_probe
//! ```

use ucheck::engine::{faithfulness_probe, TestConfig};
use ucheck::stats::{Dataset, RngStream};

fn main() {
    let mut rng = RngStream::new(23, 0);
    let n = 20_000;
    let c1: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
    let c2: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
    let z: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
    let x: Vec<f64> = (0..n)
        .map(|i| 0.5 * c1[i] + 0.5 * c2[i] + 0.5 * z[i] + rng.standard_normal())
        .collect();
    let y: Vec<f64> = (0..n)
        .map(|i| 0.3 * x[i] + 0.6 * c1[i] + 0.6 * c2[i] + rng.standard_normal())
        .collect();
    let data = Dataset::new(vec![
        ("x".into(), x),
        ("y".into(), y),
        ("c1".into(), c1),
        ("c2".into(), c2),
        ("z".into(), z),
    ])
    .unwrap();

    let report = faithfulness_probe(
        &data,
        "x",
        "y",
        &["c1", "c2", "z"],
        &["c1", "c2"],
        &TestConfig::default(),
    )
    .unwrap();

    println!(
        "base verdict: {} with witnesses {:?}",
        report.base.verdict, report.base.witnesses
    );
    println!(
        "exposure effect: full model {:.3}, restricted model {:.3}",
        report.base.exposure_effect.coefficient,
        report.restricted_exposure_effect.coefficient
    );
    for w in &report.witnesses {
        println!(
            "witness {}: restricted p {:.2e}, bivariate p {:.2e} -> suspect: {}",
            w.covariate,
            w.p_restricted.unwrap(),
            w.p_bivariate.unwrap(),
            w.faithfulness_suspect
        );
    }
    if report.flagged.is_empty() {
        println!("no witness is faithfulness-suspect: dropping the confounders re-exposed the bias as expected");
    } else {
        println!("faithfulness-suspect witnesses: {:?}", report.flagged);
    }
}
