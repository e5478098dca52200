//! Directed acyclic graphs with named nodes, latent markers, and an optional
//! selection node.

use std::collections::HashMap;
use std::fmt;

use super::error::GraphError;

/// An immutable DAG. Latent nodes take part in separation queries like any
/// other node but may never be conditioned on or placed in an adjustment
/// set. A declared selection node is implicitly part of every conditioning
/// set, which models conditioning by design.
#[derive(Debug, Clone)]
pub struct Dag {
    names: Vec<String>,
    index: HashMap<String, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    latent: Vec<bool>,
    selection: Option<usize>,
}

impl Dag {
    /// Builds a DAG from an edge list. Nodes are registered in order of first
    /// appearance; `latent` and `selection` must name nodes that appear in
    /// some edge.
    pub fn build(
        edges: &[(&str, &str)],
        latent: &[&str],
        selection: Option<&str>,
    ) -> Result<Self, GraphError> {
        Self::build_with_nodes(&[], edges, latent, selection)
    }

    /// Like [`Dag::build`], but with an explicit node universe so isolated
    /// nodes can exist. Latent and selection markers may then also name
    /// isolated nodes.
    pub fn build_with_nodes(
        nodes: &[&str],
        edges: &[(&str, &str)],
        latent: &[&str],
        selection: Option<&str>,
    ) -> Result<Self, GraphError> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let register = |name: &str, names: &mut Vec<String>, index: &mut HashMap<String, usize>| {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        for n in nodes {
            register(n, &mut names, &mut index);
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop((*a).to_string()));
            }
            let u = register(a, &mut names, &mut index);
            let v = register(b, &mut names, &mut index);
            pairs.push((u, v));
        }
        let n = names.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for (u, v) in pairs {
            if !children[u].contains(&v) {
                children[u].push(v);
                parents[v].push(u);
            }
        }

        let mut latent_mask = vec![false; n];
        for l in latent {
            let id = *index
                .get(*l)
                .ok_or_else(|| GraphError::UnknownNode((*l).to_string()))?;
            latent_mask[id] = true;
        }
        let selection = match selection {
            Some(s) => Some(
                *index
                    .get(s)
                    .ok_or_else(|| GraphError::UnknownNode(s.to_string()))?,
            ),
            None => None,
        };

        let dag = Self {
            names,
            index,
            parents,
            children,
            latent: latent_mask,
            selection,
        };
        dag.check_acyclic()?;
        Ok(dag)
    }

    fn check_acyclic(&self) -> Result<(), GraphError> {
        // Kahn's algorithm; any leftover node sits on a cycle.
        let n = self.n();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &c in &self.children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    queue.push(c);
                }
            }
        }
        if seen == n {
            Ok(())
        } else {
            Err(GraphError::CycleDetected)
        }
    }

    /// Parses the graph text format: one declaration per line, where
    /// `A -> B` adds an edge, `latent U` marks a node, `select S` marks the
    /// selection node, and `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut edges: Vec<(String, String)> = Vec::new();
        let mut latent: Vec<String> = Vec::new();
        let mut selection: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let decl = raw.split('#').next().unwrap_or("").trim();
            if decl.is_empty() {
                continue;
            }
            if let Some((lhs, rhs)) = decl.split_once("->") {
                let (a, b) = (lhs.trim(), rhs.trim());
                if a.is_empty() || b.is_empty() || b.contains("->") {
                    return Err(GraphError::Parse {
                        line,
                        msg: format!("malformed edge declaration `{decl}`"),
                    });
                }
                edges.push((a.to_string(), b.to_string()));
            } else {
                let mut tokens = decl.split_whitespace();
                match (tokens.next(), tokens.next(), tokens.next()) {
                    (Some("latent"), Some(name), None) => latent.push(name.to_string()),
                    (Some("select"), Some(name), None) => {
                        if selection.is_some() {
                            return Err(GraphError::Parse {
                                line,
                                msg: "selection node declared twice".into(),
                            });
                        }
                        selection = Some(name.to_string());
                    }
                    _ => {
                        return Err(GraphError::Parse {
                            line,
                            msg: format!("unrecognized declaration `{decl}`"),
                        })
                    }
                }
            }
        }
        let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let latent_refs: Vec<&str> = latent.iter().map(String::as_str).collect();
        Self::build(&edge_refs, &latent_refs, selection.as_deref()).map_err(|e| match e {
            GraphError::UnknownNode(n) => GraphError::Parse {
                line: 0,
                msg: format!("`{n}` is marked but appears in no edge"),
            },
            other => other,
        })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn node_id(&self, name: &str) -> Result<usize, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownNode(name.to_string()))
    }

    pub fn node_name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn node_names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn is_latent_id(&self, id: usize) -> bool {
        self.latent[id]
    }

    pub fn selection_id(&self) -> Option<usize> {
        self.selection
    }

    pub fn parents_of(&self, id: usize) -> &[usize] {
        &self.parents[id]
    }

    pub fn children_of(&self, id: usize) -> &[usize] {
        &self.children[id]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.children[from].contains(&to)
    }

    /// Nodes reachable from `node` by directed paths, excluding the node
    /// itself, sorted by name.
    pub fn descendants(&self, node: &str) -> Result<Vec<String>, GraphError> {
        let id = self.node_id(node)?;
        let mask = self.descendant_mask(id);
        let mut out: Vec<String> = (0..self.n())
            .filter(|&v| v != id && mask[v])
            .map(|v| self.names[v].clone())
            .collect();
        out.sort();
        Ok(out)
    }

    /// Node ids in a topological order (parents before children).
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.n();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut queue: std::collections::VecDeque<usize> =
            (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &c in &self.children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    queue.push_back(c);
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        order
    }

    /// Reachability mask including the start node.
    pub(crate) fn descendant_mask(&self, id: usize) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        let mut stack = vec![id];
        mask[id] = true;
        while let Some(v) = stack.pop() {
            for &c in &self.children[v] {
                if !mask[c] {
                    mask[c] = true;
                    stack.push(c);
                }
            }
        }
        mask
    }

    /// Ancestor mask of a set of seeds, including the seeds.
    pub(crate) fn ancestor_mask(&self, seeds: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        let mut stack: Vec<usize> = Vec::new();
        for &s in seeds {
            if !mask[s] {
                mask[s] = true;
                stack.push(s);
            }
        }
        while let Some(v) = stack.pop() {
            for &p in &self.parents[v] {
                if !mask[p] {
                    mask[p] = true;
                    stack.push(p);
                }
            }
        }
        mask
    }

    /// Finds one directed path `from -> ... -> to`, if any.
    pub(crate) fn directed_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.n()];
        let mut stack = vec![from];
        let mut seen = vec![false; self.n()];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &c in &self.children[v] {
                if !seen[c] {
                    seen[c] = true;
                    prev[c] = v;
                    stack.push(c);
                }
            }
        }
        None
    }

    /// A copy of the graph with every edge out of `x` removed.
    pub(crate) fn without_edges_out_of(&self, x: usize) -> Dag {
        let mut out = self.clone();
        for &c in &self.children[x] {
            out.parents[c].retain(|&p| p != x);
        }
        out.children[x].clear();
        out
    }

    /// Renders the graph back into the text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (u, children) in self.children.iter().enumerate() {
            for &v in children {
                out.push_str(&format!("{} -> {}\n", self.names[u], self.names[v]));
            }
        }
        for (v, &is_latent) in self.latent.iter().enumerate() {
            if is_latent {
                out.push_str(&format!("latent {}\n", self.names[v]));
            }
        }
        if let Some(s) = self.selection {
            out.push_str(&format!("select {}\n", self.names[s]));
        }
        out
    }
}

impl fmt::Display for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_chains_and_rejects_cycles() {
        let dag = Dag::build(&[("A", "B"), ("B", "C")], &[], None).unwrap();
        assert_eq!(dag.n(), 3);
        assert_eq!(dag.descendants("A").unwrap(), vec!["B", "C"]);
        assert!(dag.descendants("C").unwrap().is_empty());

        let err = Dag::build(&[("A", "B"), ("B", "A")], &[], None).unwrap_err();
        assert_eq!(err, GraphError::CycleDetected);
        let err = Dag::build(&[("A", "A")], &[], None).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop("A".into()));
    }

    #[test]
    fn figure_like_confounder_graph_builds() {
        // one latent common cause and three exposure-only covariates
        let dag = Dag::build(
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
        assert!(dag.is_latent_id(dag.node_id("U").unwrap()));
        assert_eq!(dag.descendants("X").unwrap(), vec!["Y"]);
    }

    #[test]
    fn unknown_marker_nodes_are_rejected() {
        let err = Dag::build(&[("A", "B")], &["Q"], None).unwrap_err();
        assert_eq!(err, GraphError::UnknownNode("Q".into()));
        let err = Dag::build(&[("A", "B")], &[], Some("S")).unwrap_err();
        assert_eq!(err, GraphError::UnknownNode("S".into()));
    }

    #[test]
    fn explicit_universe_allows_isolated_nodes() {
        let dag = Dag::build_with_nodes(&["X", "Y", "C1"], &[], &[], None).unwrap();
        assert_eq!(dag.n(), 3);
        assert!(dag.descendants("X").unwrap().is_empty());
    }

    #[test]
    fn parses_text_format_with_comments() {
        let text = "\
# a three node chain with one latent
A -> B
B->C   # compact arrows are fine
latent B
select C
";
        let dag = Dag::from_text(text).unwrap();
        assert_eq!(dag.n(), 3);
        assert!(dag.is_latent_id(dag.node_id("B").unwrap()));
        assert_eq!(dag.selection_id(), Some(dag.node_id("C").unwrap()));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Dag::from_text("A -> B\nB => C\n").unwrap_err();
        assert_eq!(
            err,
            GraphError::Parse {
                line: 2,
                msg: "unrecognized declaration `B => C`".into()
            }
        );
        let err = Dag::from_text("A ->\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
        let err = Dag::from_text("select A\nselect A\nA -> B\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
    }

    #[test]
    fn text_round_trip() {
        let text = "A -> B\nB -> C\nlatent A\nselect C\n";
        let dag = Dag::from_text(text).unwrap();
        assert_eq!(dag.to_text(), text);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let dag = Dag::build(&[("A", "B"), ("A", "B")], &[], None).unwrap();
        assert_eq!(dag.children_of(dag.node_id("A").unwrap()).len(), 1);
    }
}
