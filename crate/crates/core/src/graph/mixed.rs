use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{ordered_pair, EndpointMark, NodeId};
use crate::error::{Error, Result};

/// One edge with its two endpoint marks, normalised so that `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: NodeId,
    pub b: NodeId,
    pub mark_a: EndpointMark,
    pub mark_b: EndpointMark,
}

impl Edge {
    pub fn mark_at(&self, node: NodeId) -> Option<EndpointMark> {
        if node == self.a {
            Some(self.mark_a)
        } else if node == self.b {
            Some(self.mark_b)
        } else {
            None
        }
    }

    pub fn is_bidirected(&self) -> bool {
        self.mark_a == EndpointMark::Arrow && self.mark_b == EndpointMark::Arrow
    }

    /// `Some((from, to))` when the edge is `from -> to`.
    pub fn direction(&self) -> Option<(NodeId, NodeId)> {
        use EndpointMark::*;
        match (self.mark_a, self.mark_b) {
            (Tail, Arrow) => Some((self.a, self.b)),
            (Arrow, Tail) => Some((self.b, self.a)),
            _ => None,
        }
    }

    pub fn has_circle(&self) -> bool {
        self.mark_a == EndpointMark::Circle || self.mark_b == EndpointMark::Circle
    }
}

/// Graph over visible nodes whose edge endpoints carry [`EndpointMark`]s,
/// together with recorded definite non-collider constraints.
///
/// Marks are monotone: a `Circle` may be refined to `Tail` or `Arrow`, but a
/// definite mark never changes. A constraint `(A, B, C)` forbids `A *-> B <-* C`
/// and is stored once for both orientations of the triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    names: Vec<String>,
    by_name: HashMap<String, NodeId>,
    // ends[at * n + other] = mark at `at` on edge at - other
    ends: Vec<Option<EndpointMark>>,
    adj: Vec<BTreeSet<NodeId>>,
    constraints: BTreeSet<(NodeId, NodeId, NodeId)>,
}

impl MixedGraph {
    /// Edgeless graph over the given node names.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut by_name = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), NodeId(i)).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let n = names.len();
        Ok(Self {
            names,
            by_name,
            ends: vec![None; n * n],
            adj: vec![BTreeSet::new(); n],
            constraints: BTreeSet::new(),
        })
    }

    /// Complete graph with every endpoint marked `Circle`.
    pub fn complete<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut g = Self::new(names)?;
        let n = g.node_count();
        for a in 0..n {
            for b in (a + 1)..n {
                g.add_edge(NodeId(a), NodeId(b), EndpointMark::Circle, EndpointMark::Circle)?;
            }
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
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

    pub fn add_edge(
        &mut self,
        a: NodeId,
        b: NodeId,
        mark_a: EndpointMark,
        mark_b: EndpointMark,
    ) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::SelfLoop(self.names[a.0].clone()));
        }
        if self.adjacent(a, b) {
            return Err(Error::DuplicateEdge(
                self.names[a.0].clone(),
                self.names[b.0].clone(),
            ));
        }
        let n = self.node_count();
        self.ends[a.0 * n + b.0] = Some(mark_a);
        self.ends[b.0 * n + a.0] = Some(mark_b);
        self.adj[a.0].insert(b);
        self.adj[b.0].insert(a);
        Ok(())
    }

    /// Adds an edge by node names, e.g. `("A", Circle, "B", Arrow)` for `A o-> B`.
    pub fn add_edge_named(
        &mut self,
        a: &str,
        mark_a: EndpointMark,
        b: &str,
        mark_b: EndpointMark,
    ) -> Result<()> {
        let (a, b) = (self.require(a)?, self.require(b)?);
        self.add_edge(a, b, mark_a, mark_b)
    }

    /// Deletes the edge and every constraint that relied on it.
    pub fn remove_edge(&mut self, a: NodeId, b: NodeId) -> bool {
        if !self.adjacent(a, b) {
            return false;
        }
        let n = self.node_count();
        self.ends[a.0 * n + b.0] = None;
        self.ends[b.0 * n + a.0] = None;
        self.adj[a.0].remove(&b);
        self.adj[b.0].remove(&a);
        self.constraints.retain(|&(x, m, y)| {
            let uses = |p: NodeId, q: NodeId| ordered_pair(p, q) == ordered_pair(a, b);
            !(uses(x, m) || uses(m, y))
        });
        true
    }

    /// Deletes every edge incident to `a` (and with them every constraint mentioning `a`).
    pub fn isolate(&mut self, a: NodeId) {
        let nbrs: Vec<NodeId> = self.adj[a.0].iter().copied().collect();
        for b in nbrs {
            self.remove_edge(a, b);
        }
    }

    pub fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        a.0 < self.node_count() && self.adj[a.0].contains(&b)
    }

    pub fn neighbors(&self, a: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[a.0].iter().copied()
    }

    pub fn degree(&self, a: NodeId) -> usize {
        self.adj[a.0].len()
    }

    /// Mark at `at` on the edge `at - other`, if the edge exists.
    pub fn mark_at(&self, at: NodeId, other: NodeId) -> Option<EndpointMark> {
        let n = self.node_count();
        if at.0 >= n || other.0 >= n {
            return None;
        }
        self.ends[at.0 * n + other.0]
    }

    pub fn edge(&self, a: NodeId, b: NodeId) -> Option<Edge> {
        let (a, b) = ordered_pair(a, b);
        Some(Edge {
            a,
            b,
            mark_a: self.mark_at(a, b)?,
            mark_b: self.mark_at(b, a)?,
        })
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for a in self.nodes() {
            for &b in self.adj[a.0].range(NodeId(a.0 + 1)..) {
                out.push(self.edge(a, b).expect("adjacency and marks out of sync"));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// `true` iff the edge is `from -> to` (tail at `from`, arrow at `to`).
    pub fn is_directed(&self, from: NodeId, to: NodeId) -> bool {
        self.mark_at(from, to) == Some(EndpointMark::Tail)
            && self.mark_at(to, from) == Some(EndpointMark::Arrow)
    }

    /// Refines the mark at `at` on edge `at - other`.
    ///
    /// Returns `Ok(true)` if the mark changed, `Ok(false)` if it already had
    /// that value. Replacing a definite mark with a different one, or placing
    /// an arrowhead that completes a forbidden collider, is an error.
    pub fn set_mark(&mut self, at: NodeId, other: NodeId, mark: EndpointMark) -> Result<bool> {
        let existing = self
            .mark_at(at, other)
            .ok_or_else(|| self.missing_edge(at, other))?;
        if existing == mark {
            return Ok(false);
        }
        if existing != EndpointMark::Circle {
            return Err(Error::MarkConflict {
                at: self.names[at.0].clone(),
                other: self.names[other.0].clone(),
                existing,
                requested: mark,
            });
        }
        if mark == EndpointMark::Arrow {
            for c in self.neighbors(at) {
                if c != other
                    && self.mark_at(at, c) == Some(EndpointMark::Arrow)
                    && self.has_constraint(other, at, c)
                {
                    return Err(Error::ConstraintConflict(
                        self.names[other.0].clone(),
                        self.names[at.0].clone(),
                        self.names[c.0].clone(),
                    ));
                }
            }
        }
        let n = self.node_count();
        self.ends[at.0 * n + other.0] = Some(mark);
        Ok(true)
    }

    /// True iff a path of `->` edges leads from `from` to `to`; `from == to` counts.
    pub fn has_directed_path(&self, from: NodeId, to: NodeId) -> Result<bool> {
        self.check(from)?;
        self.check(to)?;
        if from == to {
            return Ok(true);
        }
        let mut seen = vec![false; self.node_count()];
        seen[from.0] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w.0] && self.is_directed(v, w) {
                    if w == to {
                        return Ok(true);
                    }
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        Ok(false)
    }

    /// `A *-> B <-* C`: both edges carry an arrowhead at `b`.
    pub fn is_collider(&self, a: NodeId, b: NodeId, c: NodeId) -> Result<bool> {
        let ab = self.mark_at(b, a).ok_or_else(|| self.missing_edge(a, b))?;
        let cb = self.mark_at(b, c).ok_or_else(|| self.missing_edge(c, b))?;
        Ok(ab == EndpointMark::Arrow && cb == EndpointMark::Arrow)
    }

    /// Records that `a *-* b *-* c` must not meet head to head at `b`.
    ///
    /// Returns whether the constraint is new.
    pub fn add_constraint(&mut self, a: NodeId, b: NodeId, c: NodeId) -> Result<bool> {
        if a == c {
            return Err(Error::InvalidParameter(format!(
                "constraint endpoints coincide at {}",
                self.names[a.0]
            )));
        }
        if self.is_collider(a, b, c)? {
            return Err(Error::ConstraintConflict(
                self.names[a.0].clone(),
                self.names[b.0].clone(),
                self.names[c.0].clone(),
            ));
        }
        Ok(self.constraints.insert(canonical_triple(a, b, c)))
    }

    pub fn has_constraint(&self, a: NodeId, b: NodeId, c: NodeId) -> bool {
        self.constraints.contains(&canonical_triple(a, b, c))
    }

    /// Constraints as `(A, B, C)` with `A < C`, sorted.
    pub fn constraints(&self) -> impl Iterator<Item = (NodeId, NodeId, NodeId)> + '_ {
        self.constraints.iter().copied()
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    /// No constraint has `a` in the middle, and `a` has no edge `a -> b` or
    /// `a o-> b` pointing into a neighbour. Bidirected edges do not block
    /// removal: they stand for a hidden common cause, not for `a` pointing
    /// into `b`.
    pub fn legally_removable(&self, a: NodeId) -> bool {
        if self.constraints.iter().any(|&(_, m, _)| m == a) {
            return false;
        }
        self.neighbors(a).all(|b| {
            self.mark_at(b, a) != Some(EndpointMark::Arrow)
                || self.mark_at(a, b) == Some(EndpointMark::Arrow)
        })
    }

    pub(crate) fn check(&self, id: NodeId) -> Result<()> {
        if id.0 < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(id.to_string()))
        }
    }

    fn missing_edge(&self, a: NodeId, b: NodeId) -> Error {
        let name = |v: NodeId| {
            self.names
                .get(v.0)
                .cloned()
                .unwrap_or_else(|| v.to_string())
        };
        Error::MissingEdge(name(a), name(b))
    }
}

fn canonical_triple(a: NodeId, b: NodeId, c: NodeId) -> (NodeId, NodeId, NodeId) {
    if a <= c {
        (a, b, c)
    } else {
        (c, b, a)
    }
}
