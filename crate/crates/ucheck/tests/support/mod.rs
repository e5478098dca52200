//! Shared machinery for the integration suites: a linear-Gaussian
//! structural-equation simulator and the hand-built fixture graphs.

#![allow(dead_code)]

use std::collections::HashMap;

use ucheck::graph::Dag;
use ucheck::stats::{Dataset, RngStream};

/// Simulates a linear-Gaussian SEM over the DAG: each node is the
/// coefficient-weighted sum of its parents plus unit-variance noise. Edge
/// coefficients are `±Uniform(min_coef, 1)`. Latent nodes drive the system
/// but are excluded from the returned dataset.
pub fn simulate_linear_sem(dag: &Dag, rng: &mut RngStream, n: usize, min_coef: f64) -> Dataset {
    let order = dag.topological_order();
    let mut coefs: HashMap<(usize, usize), f64> = HashMap::new();
    for &v in &order {
        for &p in dag.parents_of(v) {
            let mag = rng.uniform(min_coef, 1.0).unwrap();
            let sign = if rng.uniform(0.0, 1.0).unwrap() < 0.5 {
                -1.0
            } else {
                1.0
            };
            coefs.insert((p, v), sign * mag);
        }
    }
    let mut values: Vec<Vec<f64>> = vec![Vec::new(); dag.n()];
    for &v in &order {
        let mut col = vec![0.0; n];
        rng.fill_standard_normal(&mut col);
        for &p in dag.parents_of(v) {
            let c = coefs[&(p, v)];
            for (slot, parent) in col.iter_mut().zip(&values[p]) {
                *slot += c * parent;
            }
        }
        values[v] = col;
    }
    let columns = (0..dag.n())
        .filter(|&v| !dag.is_latent_id(v))
        .map(|v| (dag.node_name(v).to_string(), values[v].clone()))
        .collect();
    Dataset::new(columns).unwrap()
}

/// The intuition fixture graphs: nine small scenarios around an exposure X,
/// outcome Y, tested covariate Z, measured covariate C, and various
/// unmeasured drivers.
pub fn fixture_graphs() -> Vec<(&'static str, Dag)> {
    vec![
        // Z causes X; U confounds; all checkable assumptions hold.
        (
            "a",
            Dag::build(
                &[
                    ("Z", "X"),
                    ("C", "X"),
                    ("C", "Y"),
                    ("U", "X"),
                    ("U", "Y"),
                    ("X", "Y"),
                ],
                &["U"],
                None,
            )
            .unwrap(),
        ),
        // Z does not cause X; it hangs off a shared unmeasured cause K.
        (
            "b",
            Dag::build(
                &[
                    ("K", "Z"),
                    ("K", "X"),
                    ("C", "X"),
                    ("C", "Y"),
                    ("U", "X"),
                    ("U", "Y"),
                    ("X", "Y"),
                ],
                &["K", "U"],
                None,
            )
            .unwrap(),
        ),
        // reverse causation: the outcome drives the exposure
        (
            "c",
            Dag::build(
                &[
                    ("Z", "X"),
                    ("C", "X"),
                    ("C", "Y"),
                    ("U", "X"),
                    ("U", "Y"),
                    ("Y", "X"),
                ],
                &["U"],
                None,
            )
            .unwrap(),
        ),
        // the exposure is a mismeasured version X of a true driver T
        (
            "d",
            Dag::build(
                &[
                    ("Z", "T"),
                    ("C", "T"),
                    ("C", "Y"),
                    ("U", "T"),
                    ("U", "Y"),
                    ("T", "Y"),
                    ("T", "X"),
                    ("E", "X"),
                ],
                &["T", "E", "U"],
                None,
            )
            .unwrap(),
        ),
        // a candidate covariate is caused by the exposure
        (
            "e",
            Dag::build(
                &[
                    ("C", "X"),
                    ("C", "Y"),
                    ("U", "X"),
                    ("U", "Y"),
                    ("X", "Y"),
                    ("X", "Z"),
                ],
                &["U"],
                None,
            )
            .unwrap(),
        ),
        // selection into the sample is caused by the exposure
        (
            "f",
            Dag::build(
                &[
                    ("Z", "X"),
                    ("C", "X"),
                    ("C", "Y"),
                    ("U", "X"),
                    ("U", "Y"),
                    ("X", "Y"),
                    ("X", "S"),
                ],
                &["U"],
                Some("S"),
            )
            .unwrap(),
        ),
        // Z reaches Y only through X once C is conditioned
        (
            "g",
            Dag::build(
                &[
                    ("Z", "X"),
                    ("Z", "C"),
                    ("C", "X"),
                    ("C", "Y"),
                    ("X", "Y"),
                ],
                &[],
                None,
            )
            .unwrap(),
        ),
        // Z is itself a confounder (non-collider on a backdoor path)
        (
            "h",
            Dag::build(
                &[
                    ("Z", "X"),
                    ("Z", "Y"),
                    ("C", "X"),
                    ("C", "Y"),
                    ("X", "Y"),
                ],
                &[],
                None,
            )
            .unwrap(),
        ),
        // Z is a collider on a backdoor path; conditioning on it opens bias
        (
            "i",
            Dag::build(
                &[
                    ("W", "X"),
                    ("W", "Z"),
                    ("L", "Z"),
                    ("L", "Y"),
                    ("C", "X"),
                    ("C", "Y"),
                    ("X", "Y"),
                ],
                &["W", "L"],
                None,
            )
            .unwrap(),
        ),
    ]
}

/// Variant of fixture (a) without the unmeasured confounder: {Z, C} is a
/// valid but redundant adjustment set certified through Z.
pub fn fixture_a_without_confounder() -> Dag {
    Dag::build(
        &[("Z", "X"), ("C", "X"), ("C", "Y"), ("X", "Y")],
        &[],
        None,
    )
    .unwrap()
}

/// A general random DAG (no assumption constraints) for equivalence tests.
pub fn random_unconstrained_dag(rng: &mut RngStream, n_nodes: usize, edge_prob: f64) -> Dag {
    let names: Vec<String> = (0..n_nodes).map(|i| format!("N{i}")).collect();
    let mut order: Vec<usize> = (0..n_nodes).collect();
    for i in (1..order.len()).rev() {
        let j = (rng.uniform(0.0, (i + 1) as f64).unwrap()) as usize;
        order.swap(i, j.min(i));
    }
    let mut edges = Vec::new();
    for i in 0..n_nodes {
        for j in i + 1..n_nodes {
            if rng.uniform(0.0, 1.0).unwrap() < edge_prob {
                edges.push((names[order[i]].as_str(), names[order[j]].as_str()));
            }
        }
    }
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Dag::build_with_nodes(&name_refs, &edges, &[], None).unwrap()
}
