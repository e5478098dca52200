//! d-separation: a linear-time test via ancestral moralization, and an
//! exhaustive path-enumeration oracle for cross-checking it.

use std::collections::VecDeque;

use super::dag::Dag;
use super::error::GraphError;

/// Node cap for the path-enumeration operations.
pub const ENUMERATION_CAP: usize = 12;

/// Tests whether every path between `a` and `b` is blocked given `z`.
///
/// Implemented by moralizing the ancestral subgraph of the query nodes and
/// checking undirected reachability, so it runs in time linear in the graph
/// size rather than enumerating paths. A declared selection node joins the
/// conditioning set implicitly unless it is itself under query.
pub fn d_separated(dag: &Dag, a: &[&str], b: &[&str], z: &[&str]) -> Result<bool, GraphError> {
    let (a, b, z) = resolve_query(dag, a, b, z)?;
    Ok(d_separated_ids(dag, &a, &b, &z))
}

/// Same contract as [`d_separated`], by exhaustive enumeration of simple
/// paths with per-path blocking checks. Quadratic-exponential; capped at
/// [`ENUMERATION_CAP`] nodes.
pub fn d_separated_bruteforce(
    dag: &Dag,
    a: &[&str],
    b: &[&str],
    z: &[&str],
) -> Result<bool, GraphError> {
    if dag.n() > ENUMERATION_CAP {
        return Err(GraphError::TooLarge {
            nodes: dag.n(),
            max: ENUMERATION_CAP,
        });
    }
    let (a, b, z) = resolve_query(dag, a, b, z)?;
    let open_collider = open_collider_mask(dag, &z);
    let mut z_mask = vec![false; dag.n()];
    for &v in &z {
        z_mask[v] = true;
    }
    for &s in &a {
        for &t in &b {
            let mut found_open = false;
            for_each_simple_path(dag, s, t, &mut |path| {
                if path_is_open(dag, path, &z_mask, &open_collider) {
                    found_open = true;
                }
            });
            if found_open {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

type ResolvedQuery = (Vec<usize>, Vec<usize>, Vec<usize>);

/// Resolves names, enforces disjointness, and applies the implicit
/// selection-node conditioning.
fn resolve_query(
    dag: &Dag,
    a: &[&str],
    b: &[&str],
    z: &[&str],
) -> Result<ResolvedQuery, GraphError> {
    let a = resolve_set(dag, a)?;
    let b = resolve_set(dag, b)?;
    let mut z = resolve_set(dag, z)?;
    for &v in &a {
        if b.contains(&v) || z.contains(&v) {
            return Err(GraphError::OverlappingSets(dag.node_name(v).to_string()));
        }
    }
    for &v in &b {
        if z.contains(&v) {
            return Err(GraphError::OverlappingSets(dag.node_name(v).to_string()));
        }
    }
    if let Some(s) = dag.selection_id() {
        if !a.contains(&s) && !b.contains(&s) && !z.contains(&s) {
            z.push(s);
        }
    }
    Ok((a, b, z))
}

pub(crate) fn resolve_set(dag: &Dag, names: &[&str]) -> Result<Vec<usize>, GraphError> {
    let mut out = Vec::with_capacity(names.len());
    for n in names {
        let id = dag.node_id(n)?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    Ok(out)
}

/// Core reachability test over node ids. The conditioning set is taken as
/// given (no implicit selection handling at this level).
pub(crate) fn d_separated_ids(dag: &Dag, a: &[usize], b: &[usize], z: &[usize]) -> bool {
    if a.is_empty() || b.is_empty() {
        return true;
    }
    let mut seeds: Vec<usize> = a.to_vec();
    seeds.extend_from_slice(b);
    seeds.extend_from_slice(z);
    let mask = dag.ancestor_mask(&seeds);

    let mut blocked = vec![false; dag.n()];
    for &v in z {
        blocked[v] = true;
    }

    // Moral graph of the ancestral closure: parent-child links plus
    // marriages between co-parents.
    let n = dag.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if !mask[v] {
            continue;
        }
        let pa = dag.parents_of(v);
        for &p in pa {
            if mask[p] {
                adj[v].push(p);
                adj[p].push(v);
            }
        }
        for i in 0..pa.len() {
            if !mask[pa[i]] {
                continue;
            }
            for j in i + 1..pa.len() {
                if mask[pa[j]] {
                    adj[pa[i]].push(pa[j]);
                    adj[pa[j]].push(pa[i]);
                }
            }
        }
    }

    let mut target = vec![false; n];
    for &t in b {
        if !blocked[t] {
            target[t] = true;
        }
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in a {
        if !blocked[s] && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if target[v] {
            return false;
        }
        for &w in &adj[v] {
            if !seen[w] && !blocked[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    true
}

/// Mask of nodes that are open when they occur as colliders: conditioned
/// nodes and their ancestors.
pub(crate) fn open_collider_mask(dag: &Dag, z: &[usize]) -> Vec<bool> {
    dag.ancestor_mask(z)
}

/// Blocking check for one simple path under the standard rules: a
/// non-collider blocks when conditioned on; a collider blocks unless it or
/// one of its descendants is conditioned on.
pub(crate) fn path_is_open(
    dag: &Dag,
    path: &[usize],
    z_mask: &[bool],
    open_collider: &[bool],
) -> bool {
    for w in path.windows(3) {
        let (prev, v, next) = (w[0], w[1], w[2]);
        let collider = dag.has_edge(prev, v) && dag.has_edge(next, v);
        if collider {
            if !open_collider[v] {
                return false;
            }
        } else if z_mask[v] {
            return false;
        }
    }
    true
}

/// Invokes `visit` on every simple path from `s` to `t` over the skeleton.
pub(crate) fn for_each_simple_path(
    dag: &Dag,
    s: usize,
    t: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    let mut on_path = vec![false; dag.n()];
    let mut path = vec![s];
    on_path[s] = true;
    walk(dag, t, &mut path, &mut on_path, visit);
}

fn walk(
    dag: &Dag,
    t: usize,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    visit: &mut impl FnMut(&[usize]),
) {
    let v = *path.last().unwrap();
    if v == t {
        visit(path);
        return;
    }
    let neighbors = dag
        .parents_of(v)
        .iter()
        .chain(dag.children_of(v))
        .copied()
        .collect::<Vec<_>>();
    for w in neighbors {
        if !on_path[w] {
            on_path[w] = true;
            path.push(w);
            walk(dag, t, path, on_path, visit);
            path.pop();
            on_path[w] = false;
        }
    }
}
