use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::NodeId;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Visibility {
    Visible,
    Hidden,
}

/// Directed acyclic graph whose nodes are flagged visible or hidden.
///
/// Acyclicity is enforced on every insertion, so a `Dag` value is always a
/// valid DAG. Strict-descendant sets are computed lazily and cached; any
/// mutation drops the cache.
#[derive(Debug, Clone, Default)]
pub struct Dag {
    names: Vec<String>,
    visibility: Vec<Visibility>,
    parents: Vec<Vec<NodeId>>,
    children: Vec<Vec<NodeId>>,
    by_name: HashMap<String, NodeId>,
    descendants: OnceLock<Vec<Vec<bool>>>,
}

impl PartialEq for Dag {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.visibility == other.visibility
            && self.parents == other.parents
    }
}

impl Eq for Dag {}

impl Dag {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a DAG from `(name, visibility)` pairs and `(parent, child)` name pairs.
    pub fn from_names<'a>(
        nodes: impl IntoIterator<Item = (&'a str, Visibility)>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut dag = Dag::new();
        for (name, vis) in nodes {
            dag.add_node(name, vis)?;
        }
        for (p, c) in edges {
            let p = dag.require(p)?;
            let c = dag.require(c)?;
            dag.add_edge(p, c)?;
        }
        Ok(dag)
    }

    pub fn add_node(&mut self, name: impl Into<String>, visibility: Visibility) -> Result<NodeId> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        let id = NodeId(self.names.len());
        self.by_name.insert(name.clone(), id);
        self.names.push(name);
        self.visibility.push(visibility);
        self.parents.push(Vec::new());
        self.children.push(Vec::new());
        self.descendants = OnceLock::new();
        Ok(id)
    }

    /// Inserts `parent -> child`, rejecting self-loops, duplicates and cycles.
    pub fn add_edge(&mut self, parent: NodeId, child: NodeId) -> Result<()> {
        self.check(parent)?;
        self.check(child)?;
        if parent == child {
            return Err(Error::SelfLoop(self.names[parent.0].clone()));
        }
        if self.has_edge(parent, child) {
            return Err(Error::DuplicateEdge(
                self.names[parent.0].clone(),
                self.names[child.0].clone(),
            ));
        }
        if self.reaches(child, parent) {
            return Err(Error::Cycle(
                self.names[parent.0].clone(),
                self.names[child.0].clone(),
            ));
        }
        insert_sorted(&mut self.children[parent.0], child);
        insert_sorted(&mut self.parents[child.0], parent);
        self.descendants = OnceLock::new();
        Ok(())
    }

    /// Removes `parent -> child`; returns whether it was present.
    pub fn remove_edge(&mut self, parent: NodeId, child: NodeId) -> Result<bool> {
        self.check(parent)?;
        self.check(child)?;
        let Ok(pos) = self.children[parent.0].binary_search(&child) else {
            return Ok(false);
        };
        self.children[parent.0].remove(pos);
        let pos = self.parents[child.0]
            .binary_search(&parent)
            .expect("parent and child lists out of sync");
        self.parents[child.0].remove(pos);
        self.descendants = OnceLock::new();
        Ok(true)
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len()).map(NodeId)
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.by_name.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<NodeId> {
        self.node(name)
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn visibility(&self, id: NodeId) -> Visibility {
        self.visibility[id.0]
    }

    pub fn is_hidden(&self, id: NodeId) -> bool {
        self.visibility[id.0] == Visibility::Hidden
    }

    pub fn visible_nodes(&self) -> Vec<NodeId> {
        self.nodes().filter(|&v| !self.is_hidden(v)).collect()
    }

    pub fn hidden_nodes(&self) -> Vec<NodeId> {
        self.nodes().filter(|&v| self.is_hidden(v)).collect()
    }

    pub fn parents(&self, id: NodeId) -> &[NodeId] {
        &self.parents[id.0]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.children[id.0]
    }

    pub fn has_edge(&self, parent: NodeId, child: NodeId) -> bool {
        self.children
            .get(parent.0)
            .is_some_and(|c| c.binary_search(&child).is_ok())
    }

    pub fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.has_edge(a, b) || self.has_edge(b, a)
    }

    /// Parents and children merged, ascending.
    pub fn neighbors(&self, id: NodeId) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self.parents[id.0]
            .iter()
            .chain(&self.children[id.0])
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    /// All `(parent, child)` pairs, ascending by parent then child.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.children
            .iter()
            .enumerate()
            .flat_map(|(p, cs)| cs.iter().map(move |&c| (NodeId(p), c)))
    }

    /// Kahn's algorithm, always releasing the lowest ready index first.
    pub fn topological_order(&self) -> Vec<NodeId> {
        let n = self.node_count();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<NodeId> =
            self.nodes().filter(|v| indegree[v.0] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &c in &self.children[v.0] {
                indegree[c.0] -= 1;
                if indegree[c.0] == 0 {
                    ready.insert(c);
                }
            }
        }
        debug_assert_eq!(order.len(), n, "Dag invariant broken: cycle present");
        order
    }

    /// True iff a directed path leads from `from` to `to`; `from == to` counts.
    pub fn has_directed_path(&self, from: NodeId, to: NodeId) -> Result<bool> {
        self.check(from)?;
        self.check(to)?;
        Ok(self.reaches(from, to))
    }

    fn reaches(&self, from: NodeId, to: NodeId) -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([from]);
        seen[from.0] = true;
        while let Some(v) = queue.pop_front() {
            for &c in &self.children[v.0] {
                if c == to {
                    return true;
                }
                if !seen[c.0] {
                    seen[c.0] = true;
                    queue.push_back(c);
                }
            }
        }
        false
    }

    /// `true` iff `w` is a strict descendant of `v`.
    pub fn is_descendant(&self, v: NodeId, w: NodeId) -> bool {
        self.descendant_matrix()[v.0][w.0]
    }

    /// Cached strict-descendant matrix: `m[v][w]` iff `v` reaches `w` with at least one edge.
    pub(crate) fn descendant_matrix(&self) -> &[Vec<bool>] {
        self.descendants.get_or_init(|| {
            let n = self.node_count();
            let mut m = vec![vec![false; n]; n];
            for v in self.topological_order().into_iter().rev() {
                let mut row = vec![false; n];
                for &c in &self.children[v.0] {
                    row[c.0] = true;
                    for (w, &d) in m[c.0].iter().enumerate() {
                        if d {
                            row[w] = true;
                        }
                    }
                }
                m[v.0] = row;
            }
            m
        })
    }

    pub(crate) fn check(&self, id: NodeId) -> Result<()> {
        if id.0 < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(id.to_string()))
        }
    }
}

fn insert_sorted(v: &mut Vec<NodeId>, x: NodeId) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Dag {
        Dag::from_names(
            [("A", Visibility::Visible), ("B", Visibility::Visible), ("C", Visibility::Visible)],
            [("A", "B"), ("B", "C")],
        )
        .unwrap()
    }

    #[test]
    fn directed_path_in_chain() {
        let g = chain();
        let (a, c) = (g.require("A").unwrap(), g.require("C").unwrap());
        assert!(g.has_directed_path(a, c).unwrap());
        assert!(!g.has_directed_path(c, a).unwrap());
        assert!(g.has_directed_path(a, a).unwrap());
        assert!(g.has_directed_path(a, NodeId(9)).is_err());
    }

    #[test]
    fn rejects_cycles_duplicates_and_self_loops() {
        let mut g = chain();
        let (a, b, c) = (NodeId(0), NodeId(1), NodeId(2));
        assert!(matches!(g.add_edge(c, a), Err(Error::Cycle(..))));
        assert!(matches!(g.add_edge(a, b), Err(Error::DuplicateEdge(..))));
        assert!(matches!(g.add_edge(b, b), Err(Error::SelfLoop(_))));
        assert!(matches!(
            g.add_node("A", Visibility::Hidden),
            Err(Error::DuplicateName(_))
        ));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn descendant_cache_follows_mutation() {
        let mut g = chain();
        let (a, b, c) = (NodeId(0), NodeId(1), NodeId(2));
        assert!(g.is_descendant(a, c));
        assert!(!g.is_descendant(a, a));
        g.remove_edge(b, c).unwrap();
        assert!(!g.is_descendant(a, c));
        g.add_edge(a, c).unwrap();
        assert!(g.is_descendant(a, c));
    }

    #[test]
    fn topological_order_prefers_low_indices() {
        let g = Dag::from_names(
            [("X", Visibility::Visible), ("Y", Visibility::Visible), ("Z", Visibility::Visible)],
            [("Z", "X")],
        )
        .unwrap();
        let names: Vec<_> = g.topological_order().iter().map(|&v| g.name(v)).collect();
        assert_eq!(names, ["Y", "Z", "X"]);
    }
}
