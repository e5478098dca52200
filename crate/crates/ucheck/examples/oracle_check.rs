//! Structural certification on the two canonical scenarios: three
//! instruments with a hidden confounder, and three plain confounders.
//!
//! ```bash
//! cargo run --example oracle_check
//! ```

use ucheck::graph::{check_assumptions, is_valid_backdoor_set, certification_oracle, Dag};

fn analyze(label: &str, dag: &Dag, candidates: &[&str]) {
    println!("== {label} ==");
    let findings = check_assumptions(dag, "X", "Y", candidates).unwrap();
    for f in &findings {
        println!("  {f}");
    }
    let backdoor = is_valid_backdoor_set(dag, "X", "Y", candidates).unwrap();
    println!("  backdoor criterion satisfied by {candidates:?}: {backdoor}");
    let report = certification_oracle(dag, "X", "Y", candidates).unwrap();
    for e in &report.eligible {
        println!(
            "  {} is exposure-connected given {:?}; witness: {}",
            e.name, e.reduced_set, e.is_witness
        );
    }
    println!("  verdict: {}\n", report.verdict);
}

fn main() {
    // scenario 1: covariates cause the exposure only; U confounds
    let instruments = Dag::build(
        &[
            ("U", "X"),
            ("U", "Y"),
            ("C1", "X"),
            ("C2", "X"),
            ("C3", "X"),
            ("X", "Y"),
        ],
        &["U"],
        None,
    )
    .unwrap();
    analyze(
        "three instruments, hidden confounder",
        &instruments,
        &["C1", "C2", "C3"],
    );

    // scenario 2: covariates confound; nothing is unmeasured
    let confounders = Dag::build(
        &[
            ("C1", "X"),
            ("C1", "Y"),
            ("C2", "X"),
            ("C2", "Y"),
            ("C3", "X"),
            ("C3", "Y"),
            ("X", "Y"),
        ],
        &[],
        None,
    )
    .unwrap();
    analyze(
        "three confounders, minimal set",
        &confounders,
        &["C1", "C2", "C3"],
    );

    // a redundant exposure cause makes certification possible
    let redundant = Dag::build(
        &[("Z", "X"), ("C", "X"), ("C", "Y"), ("X", "Y")],
        &[],
        None,
    )
    .unwrap();
    analyze("redundant exposure cause", &redundant, &["Z", "C"]);
}
