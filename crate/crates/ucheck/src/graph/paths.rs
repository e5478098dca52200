//! Classification of the open paths that can carry bias past the
//! certification test.
//!
//! Two path families are enumerated for a tested covariate `z` with reduced
//! set `A*`:
//!
//! - covariate–outcome paths open given `A* ∪ {x}`, labelled with forms
//!   1–12: forms 1–4 run through the exposure as a conditioned collider
//!   (split by the first edge at `z` and the edge at `y`), forms 5–12 avoid
//!   the exposure (split by the edge pair at `z`/`y` and by how `z` hooks
//!   into the exposure);
//! - covariate–exposure paths through the outcome open given `A*`,
//!   labelled with forms 13–20 (split by the edge pair on the `z` side of
//!   `y` and the edge leaving `y` toward `x`).
//!
//! Anything that matches no template is `Unclassified`; under the checkable
//! assumptions this never happens, which the property tests assert.

use serde::{Deserialize, Serialize};

use super::dag::Dag;
use super::dsep::{
    for_each_simple_path, open_collider_mask, path_is_open, resolve_set, ENUMERATION_CAP,
};
use super::error::GraphError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathForm {
    Form(u8),
    Unclassified,
}

/// One open path with per-node collider status and its template label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub nodes: Vec<String>,
    pub colliders: Vec<bool>,
    pub form: PathForm,
}

/// Enumerates and labels the open biasing paths for covariate `z` against
/// reduced set `a_star`. Both families of records are returned together;
/// when `z` connects to the exposure both out of and into itself, the
/// out-of-`z` hook is preferred for the form label.
pub fn classify_biasing_paths(
    dag: &Dag,
    x: &str,
    y: &str,
    z: &str,
    a_star: &[&str],
) -> Result<Vec<PathRecord>, GraphError> {
    if dag.n() > ENUMERATION_CAP {
        return Err(GraphError::TooLarge {
            nodes: dag.n(),
            max: ENUMERATION_CAP,
        });
    }
    let x_id = dag.node_id(x)?;
    let y_id = dag.node_id(y)?;
    let z_id = dag.node_id(z)?;
    let a_ids = resolve_set(dag, a_star)?;
    for &v in &a_ids {
        if v == x_id || v == y_id || v == z_id {
            return Err(GraphError::OverlappingSets(dag.node_name(v).to_string()));
        }
        if dag.is_latent_id(v) {
            return Err(GraphError::LatentInAdjustmentSet(
                dag.node_name(v).to_string(),
            ));
        }
    }
    if x_id == y_id || z_id == x_id || z_id == y_id {
        return Err(GraphError::OverlappingSets(z.to_string()));
    }

    let selection = dag
        .selection_id()
        .filter(|&s| s != x_id && s != y_id && s != z_id && !a_ids.contains(&s));
    let mut cond_zx: Vec<usize> = a_ids.clone();
    if let Some(s) = selection {
        cond_zx.push(s);
    }
    let mut cond_zy = cond_zx.clone();
    cond_zy.push(x_id);

    let zx_open = open_collider_mask(dag, &cond_zx);
    let zx_mask = set_mask(dag.n(), &cond_zx);
    let zy_open = open_collider_mask(dag, &cond_zy);
    let zy_mask = set_mask(dag.n(), &cond_zy);

    // How does z hook into the exposure? Scan the open covariate–exposure
    // paths; hooks avoiding the outcome take precedence over hooks through
    // it, and out-of-z over into-z.
    let mut hook = [[false; 2]; 2];
    for_each_simple_path(dag, z_id, x_id, &mut |path| {
        if path_is_open(dag, path, &zx_mask, &zx_open) {
            let through_y = path.contains(&y_id);
            let out_of_z = dag.has_edge(z_id, path[1]);
            hook[usize::from(through_y)][usize::from(!out_of_z)] = true;
        }
    });
    let a_kind: Option<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .find(|&(t, a)| hook[t][a])
        .map(|(_, a)| a);

    let mut records = Vec::new();

    for_each_simple_path(dag, z_id, y_id, &mut |path| {
        if !path_is_open(dag, path, &zy_mask, &zy_open) {
            return;
        }
        let form = classify_covariate_outcome(dag, path, x_id, a_kind);
        records.push(make_record(dag, path, form));
    });

    for_each_simple_path(dag, z_id, x_id, &mut |path| {
        if !path.contains(&y_id) || !path_is_open(dag, path, &zx_mask, &zx_open) {
            return;
        }
        let form = classify_exposure_hook_through_outcome(dag, path, y_id, x_id);
        records.push(make_record(dag, path, form));
    });

    Ok(records)
}

/// Forms 1–12 for an open covariate–outcome path.
fn classify_covariate_outcome(
    dag: &Dag,
    path: &[usize],
    x_id: usize,
    a_kind: Option<usize>,
) -> PathForm {
    let z = path[0];
    let first_out = dag.has_edge(z, path[1]);
    let last = path[path.len() - 1];
    let into_y = dag.has_edge(path[path.len() - 2], last);

    if let Some(pos) = path.iter().position(|&v| v == x_id) {
        // The exposure sits on the path; on an open path it is necessarily a
        // conditioned collider, so only the end directions distinguish forms.
        debug_assert!(pos > 0 && pos + 1 < path.len());
        debug_assert!(dag.has_edge(path[pos - 1], x_id) && dag.has_edge(path[pos + 1], x_id));
        let a = usize::from(!first_out);
        let b = usize::from(!into_y);
        return PathForm::Form((1 + 2 * a + b) as u8);
    }

    let c = match (first_out, into_y) {
        (true, true) => 0,   // z -> ... -> y
        (false, true) => 1,  // z <- ... -> y
        (false, false) => 2, // z <- ... <- y
        (true, false) => 3,  // z -> ... <- y
    };
    match a_kind {
        Some(a) => PathForm::Form((5 + 2 * c + a) as u8),
        None => PathForm::Unclassified,
    }
}

/// Forms 13–20 for an open covariate–exposure path through the outcome.
fn classify_exposure_hook_through_outcome(
    dag: &Dag,
    path: &[usize],
    y_id: usize,
    x_id: usize,
) -> PathForm {
    let z = path[0];
    let pos = path.iter().position(|&v| v == y_id).unwrap();
    if pos == 0 || pos + 1 == path.len() {
        return PathForm::Unclassified;
    }
    // these templates all end pointing into the exposure
    if !dag.has_edge(path[path.len() - 2], x_id) {
        return PathForm::Unclassified;
    }
    let first_out = dag.has_edge(z, path[1]);
    let into_y_from_z_side = dag.has_edge(path[pos - 1], y_id);
    let c = match (first_out, into_y_from_z_side) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    };
    let b = usize::from(!dag.has_edge(path[pos + 1], y_id));
    PathForm::Form((13 + 2 * c + b) as u8)
}

fn make_record(dag: &Dag, path: &[usize], form: PathForm) -> PathRecord {
    let colliders = (0..path.len())
        .map(|i| {
            i > 0
                && i + 1 < path.len()
                && dag.has_edge(path[i - 1], path[i])
                && dag.has_edge(path[i + 1], path[i])
        })
        .collect();
    PathRecord {
        nodes: path.iter().map(|&v| dag.node_name(v).to_string()).collect(),
        colliders,
        form,
    }
}

fn set_mask(n: usize, set: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        mask[v] = true;
    }
    mask
}
