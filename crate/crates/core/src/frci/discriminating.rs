use std::collections::BTreeSet;

use crate::graph::{EndpointMark, MixedGraph, NodeId};

use EndpointMark::{Arrow, Tail};

/// One side of a discriminating path, running outward from the neighbour of
/// `M` to an endpoint.
#[derive(Debug, Clone)]
struct Chain {
    // nodes[0] is adjacent to M; the last node is the endpoint
    nodes: Vec<NodeId>,
    // endpoints allowed on the far side by the interior nodes; None if unconstrained
    far: Option<BTreeSet<NodeId>>,
}

impl Chain {
    fn end(&self) -> NodeId {
        *self.nodes.last().expect("chains are never empty")
    }

    fn has_interior(&self) -> bool {
        self.nodes.len() > 1
    }

    fn allows_far(&self, v: NodeId) -> bool {
        self.far.as_ref().is_none_or(|s| s.contains(&v))
    }
}

/// Far endpoints compatible with `v` as an interior node: a collider needs
/// `v -> Y`, any other interior node needs `v <-* Y`.
fn far_candidates(g: &MixedGraph, v: NodeId, collider: bool) -> BTreeSet<NodeId> {
    g.neighbors(v)
        .filter(|&y| {
            if collider {
                g.is_directed(v, y)
            } else {
                g.mark_at(v, y) == Some(Arrow)
            }
        })
        .collect()
}

/// All chains starting at `first` (a neighbour of `m`) that satisfy the
/// one-sided conditions: each interior node receives an arrowhead from its
/// outer neighbour, is a collider or a definite non-collider, and has at
/// least one admissible far endpoint.
fn chains(g: &MixedGraph, m: NodeId, first: NodeId, max_nodes: usize) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.node_count()];
    on_path[m.index()] = true;
    on_path[first.index()] = true;
    let mut nodes = vec![first];
    extend(g, m, &mut nodes, &mut on_path, None, max_nodes, &mut out);
    out
}

fn extend(
    g: &MixedGraph,
    m: NodeId,
    nodes: &mut Vec<NodeId>,
    on_path: &mut [bool],
    far: Option<&BTreeSet<NodeId>>,
    max_nodes: usize,
    out: &mut Vec<Chain>,
) {
    out.push(Chain {
        nodes: nodes.clone(),
        far: far.cloned(),
    });
    // two more nodes at least: the far side's neighbour of M, and M itself
    if nodes.len() + 2 >= max_nodes {
        return;
    }
    let v = *nodes.last().unwrap();
    let inner = if nodes.len() >= 2 { nodes[nodes.len() - 2] } else { m };
    let collider = g.mark_at(v, inner) == Some(Arrow);
    let tail_inward = g.mark_at(v, inner) == Some(Tail);
    let own = far_candidates(g, v, collider);
    let far_next: BTreeSet<NodeId> = match far {
        Some(f) => f.intersection(&own).copied().collect(),
        None => own,
    };
    if far_next.is_empty() {
        return;
    }
    let outer: Vec<NodeId> = g.neighbors(v).filter(|w| !on_path[w.index()]).collect();
    for w in outer {
        if g.mark_at(v, w) != Some(Arrow) {
            continue;
        }
        let definite = collider || tail_inward || g.has_constraint(w, v, inner);
        if !definite {
            continue;
        }
        on_path[w.index()] = true;
        nodes.push(w);
        extend(g, m, nodes, on_path, Some(&far_next), max_nodes, out);
        nodes.pop();
        on_path[w.index()] = false;
    }
}

/// Joins an `X`-side and a `Y`-side chain into a full path if the two-sided
/// conditions hold: disjoint sides, non-adjacent endpoints, each side's
/// interior compatible with the other endpoint, and at least one interior
/// node besides `m`.
fn join(g: &MixedGraph, m: NodeId, left: &Chain, right: &Chain, max_nodes: usize) -> Option<Vec<NodeId>> {
    let (x, y) = (left.end(), right.end());
    if x == y || g.adjacent(x, y) {
        return None;
    }
    if !left.has_interior() && !right.has_interior() {
        return None;
    }
    if left.nodes.len() + right.nodes.len() + 1 > max_nodes {
        return None;
    }
    if !left.allows_far(y) || !right.allows_far(x) {
        return None;
    }
    if left.nodes.iter().any(|v| right.nodes.contains(v)) {
        return None;
    }
    let mut path: Vec<NodeId> = left.nodes.iter().rev().copied().collect();
    path.push(m);
    path.extend(right.nodes.iter().copied());
    Some(path)
}

/// Searches for definite discriminating paths through `m` whose neighbours
/// of `m` are `p` and `r`. Side chains are enumerated depth-first and
/// combined in enumeration order; the first combination found is returned.
#[derive(Debug)]
pub(crate) struct DiscriminatingSearch<'g> {
    g: &'g MixedGraph,
    max_nodes: usize,
}

impl<'g> DiscriminatingSearch<'g> {
    pub(crate) fn new(g: &'g MixedGraph, max_nodes: Option<usize>) -> Self {
        Self {
            g,
            max_nodes: max_nodes.unwrap_or(g.node_count()),
        }
    }

    /// First path `X .. p, m, r .. Y`, optionally with fixed endpoints.
    pub(crate) fn through(
        &self,
        p: NodeId,
        m: NodeId,
        r: NodeId,
        ends: Option<(NodeId, NodeId)>,
    ) -> Option<Vec<NodeId>> {
        if p == r || !self.g.adjacent(p, m) || !self.g.adjacent(r, m) {
            return None;
        }
        let mut left = chains(self.g, m, p, self.max_nodes);
        let mut right = chains(self.g, m, r, self.max_nodes);
        if let Some((x, y)) = ends {
            left.retain(|c| c.end() == x);
            right.retain(|c| c.end() == y);
        }
        for l in &left {
            for rc in &right {
                if let Some(path) = join(self.g, m, l, rc, self.max_nodes) {
                    return Some(path);
                }
            }
        }
        None
    }
}

/// A definite discriminating path from `a` to `b` for `m`, if one exists.
///
/// Interior nodes other than `m` are colliders or definite non-colliders,
/// every edge on a side points toward `m` (edges at `m` excepted), each side's
/// interior is tied to the opposite endpoint (colliders by `V -> Y`, others by
/// `V <-* Y`), and `a`, `b` are non-adjacent. Paths are simple and have at
/// least one interior node besides `m`.
pub fn find_definite_discriminating_path(
    g: &MixedGraph,
    a: NodeId,
    b: NodeId,
    m: NodeId,
) -> Option<Vec<NodeId>> {
    find_with_limit(g, a, b, m, None)
}

/// As [`find_definite_discriminating_path`] with a cap on the number of path nodes.
pub fn find_with_limit(
    g: &MixedGraph,
    a: NodeId,
    b: NodeId,
    m: NodeId,
    max_nodes: Option<usize>,
) -> Option<Vec<NodeId>> {
    let n = g.node_count();
    if a == b || m == a || m == b || a.index() >= n || b.index() >= n || m.index() >= n {
        return None;
    }
    if g.adjacent(a, b) {
        return None;
    }
    let search = DiscriminatingSearch::new(g, max_nodes);
    let nbrs: Vec<NodeId> = g.neighbors(m).collect();
    for &p in &nbrs {
        for &r in &nbrs {
            if let Some(path) = search.through(p, m, r, Some((a, b))) {
                return Some(path);
            }
        }
    }
    None
}
