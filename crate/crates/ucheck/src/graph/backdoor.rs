//! The backdoor criterion for adjustment-set validity.

use super::dag::Dag;
use super::dsep::{d_separated_ids, resolve_set};
use super::error::GraphError;

/// Tests whether `a` satisfies the backdoor criterion for `(x, y)`: no
/// member of `a` descends from `x`, and `a` d-separates `x` from `y` in the
/// graph with every edge out of `x` removed.
pub fn is_valid_backdoor_set(dag: &Dag, x: &str, y: &str, a: &[&str]) -> Result<bool, GraphError> {
    let x_id = dag.node_id(x)?;
    let y_id = dag.node_id(y)?;
    let a_ids = resolve_set(dag, a)?;
    is_valid_backdoor_set_ids(dag, x_id, y_id, &a_ids)
}

pub(crate) fn is_valid_backdoor_set_ids(
    dag: &Dag,
    x: usize,
    y: usize,
    a: &[usize],
) -> Result<bool, GraphError> {
    for &v in a {
        if v == x || v == y {
            return Err(GraphError::OverlappingSets(dag.node_name(v).to_string()));
        }
        if dag.is_latent_id(v) {
            return Err(GraphError::LatentInAdjustmentSet(
                dag.node_name(v).to_string(),
            ));
        }
    }
    let x_desc = dag.descendant_mask(x);
    if a.iter().any(|&v| v != x && x_desc[v]) {
        return Ok(false);
    }
    let trimmed = dag.without_edges_out_of(x);
    let mut z: Vec<usize> = a.to_vec();
    if let Some(s) = dag.selection_id() {
        if s != x && s != y && !z.contains(&s) {
            z.push(s);
        }
    }
    Ok(d_separated_ids(&trimmed, &[x], &[y], &z))
}
