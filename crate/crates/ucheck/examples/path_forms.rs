//! Enumerating and labelling the open paths that can carry bias past the
//! test for a given covariate and reduced conditioning set.
//!
//! ```bash
//! cargo run --example path_forms
//! ```

use ucheck::graph::{classify_biasing_paths, Dag, PathForm};

fn show(label: &str, dag: &Dag, z: &str, a_star: &[&str]) {
    println!("== {label}: covariate {z}, reduced set {a_star:?} ==");
    let records = classify_biasing_paths(dag, "X", "Y", z, a_star).unwrap();
    if records.is_empty() {
        println!("  no open biasing paths\n");
        return;
    }
    for r in &records {
        let form = match r.form {
            PathForm::Form(f) => format!("form {f}"),
            PathForm::Unclassified => "unclassified".into(),
        };
        let colliders: Vec<&str> = r
            .nodes
            .iter()
            .zip(&r.colliders)
            .filter(|(_, &c)| c)
            .map(|(n, _)| n.as_str())
            .collect();
        println!(
            "  {} [{form}] colliders: {}",
            r.nodes.join(" - "),
            if colliders.is_empty() {
                "none".into()
            } else {
                colliders.join(", ")
            }
        );
    }
    println!();
}

fn main() {
    // the instrument scenario: conditioning on X opens the collider route
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
    show(
        "instruments with hidden confounder",
        &instruments,
        "C1",
        &["C2", "C3"],
    );

    // the tested covariate is itself a collider on a backdoor path
    let collider = Dag::build(
        &[("W", "X"), ("W", "Z"), ("U", "Z"), ("U", "Y"), ("X", "Y")],
        &[],
        None,
    )
    .unwrap();
    show("covariate as backdoor collider", &collider, "Z", &[]);

    // a plain confounding covariate
    let confounder = Dag::build(&[("Z", "X"), ("Z", "Y"), ("X", "Y")], &[], None).unwrap();
    show("covariate as plain confounder", &confounder, "Z", &[]);

    // nothing open: the reduced set blocks everything
    let blocked = Dag::build(
        &[("Z", "X"), ("C", "X"), ("C", "Y"), ("X", "Y")],
        &[],
        None,
    )
    .unwrap();
    show("fully blocked covariate", &blocked, "Z", &["C"]);
}
