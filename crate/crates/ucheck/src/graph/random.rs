//! Constrained random instances for property testing.

use crate::stats::RngStream;

use super::dag::Dag;
use super::error::GraphError;

/// A random graph together with the roles assigned to its nodes.
#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub dag: Dag,
    pub exposure: String,
    pub outcome: String,
    /// The non-latent covariates, i.e. the candidate adjustment set.
    pub candidates: Vec<String>,
}

/// Draws a DAG that satisfies the checkable assumptions by construction:
/// covariates and latents are laid out before the exposure in topological
/// order, the outcome comes last, no edge leaves the exposure toward a
/// covariate, and no selection node exists. Every ordered pair that the
/// layering allows receives an edge independently with probability
/// `edge_prob`.
pub fn random_assumption_dag(
    rng: &mut RngStream,
    n_covariates: usize,
    n_latent: usize,
    edge_prob: f64,
) -> Result<RandomInstance, GraphError> {
    if n_covariates == 0 {
        return Err(GraphError::BadParameter(
            "n_covariates must be at least 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(GraphError::BadParameter(format!(
            "edge_prob must lie in [0, 1], got {edge_prob}"
        )));
    }

    let covariates: Vec<String> = (1..=n_covariates).map(|i| format!("C{i}")).collect();
    let latents: Vec<String> = (1..=n_latent).map(|i| format!("U{i}")).collect();
    let mut pre: Vec<&str> = covariates
        .iter()
        .chain(latents.iter())
        .map(String::as_str)
        .collect();
    // Random layer order so edges between covariates and latents can point
    // either way across instances.
    shuffle(rng, &mut pre);

    let mut edges: Vec<(&str, &str)> = Vec::new();
    let bernoulli = |rng: &mut RngStream| rng.uniform(0.0, 1.0).expect("valid range") < edge_prob;
    for i in 0..pre.len() {
        for j in i + 1..pre.len() {
            if bernoulli(rng) {
                edges.push((pre[i], pre[j]));
            }
        }
    }
    for &v in &pre {
        if bernoulli(rng) {
            edges.push((v, "X"));
        }
    }
    for &v in &pre {
        if bernoulli(rng) {
            edges.push((v, "Y"));
        }
    }
    if bernoulli(rng) {
        edges.push(("X", "Y"));
    }

    let mut nodes: Vec<&str> = pre.clone();
    nodes.push("X");
    nodes.push("Y");
    let latent_refs: Vec<&str> = latents.iter().map(String::as_str).collect();
    let dag = Dag::build_with_nodes(&nodes, &edges, &latent_refs, None)?;
    Ok(RandomInstance {
        dag,
        exposure: "X".into(),
        outcome: "Y".into(),
        candidates: covariates,
    })
}

fn shuffle<T>(rng: &mut RngStream, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = (rng.uniform(0.0, (i + 1) as f64).expect("valid range")) as usize;
        items.swap(i, j.min(i));
    }
}
