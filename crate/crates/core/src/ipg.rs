//! Ground-truth structures derived from a known latent-variable DAG.
//!
//! These constructions enumerate subsets and trails directly and are meant as
//! reference oracles on small graphs. Nodes of every produced mixed graph are
//! the visible nodes of the source DAG, in ascending index order.

use crate::dsep::{d_separated, simple_trails, trail_is_active, ConditioningSet};
use crate::error::{Error, Result};
use crate::graph::{Dag, EndpointMark, MixedGraph, NodeId, Visibility};
use crate::subsets::Subsets;

/// Visible-node limit for [`build_rk_ipg`].
pub const RK_IPG_VISIBLE_LIMIT: usize = 12;
/// Total-node limit for [`build_rk_ipg`] (trail enumeration runs over hidden nodes too).
pub const RK_IPG_NODE_LIMIT: usize = 16;

/// Mixed graph with only tail and arrow marks, built for a given `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RkIpg {
    graph: MixedGraph,
    k: usize,
}

impl RkIpg {
    pub fn graph(&self) -> &MixedGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn into_graph(self) -> MixedGraph {
        self.graph
    }
}

fn visible_graph(g: &Dag) -> (MixedGraph, Vec<NodeId>) {
    let visible = g.visible_nodes();
    let names: Vec<&str> = visible.iter().map(|&v| g.name(v)).collect();
    let pi = MixedGraph::new(names).expect("dag names are unique");
    (pi, visible)
}

/// Including path graph by explicit path enumeration.
///
/// An including path between visible `A` and `B` is a simple trail whose
/// visible interior nodes are all colliders and whose colliders all have a
/// directed path to `A` or `B`. A trail into both ends yields `A <-> B`; a
/// trail out of `A` and into `B` yields `A -> B`.
pub fn build_including_path_graph(g: &Dag) -> MixedGraph {
    use EndpointMark::{Arrow, Tail};
    let (mut pi, visible) = visible_graph(g);
    let desc = g.descendant_matrix();
    for (i, &a) in visible.iter().enumerate() {
        for (j, &b) in visible.iter().enumerate().skip(i + 1) {
            let mut into_both = false;
            let mut out_a = false;
            let mut out_b = false;
            for trail in simple_trails(g, a, b) {
                let ok = trail.windows(3).all(|w| {
                    let (p, m, q) = (w[0], w[1], w[2]);
                    let collider = g.has_edge(p, m) && g.has_edge(q, m);
                    if collider {
                        desc[m.index()][a.index()] || desc[m.index()][b.index()]
                    } else {
                        g.is_hidden(m)
                    }
                });
                if !ok {
                    continue;
                }
                let n = trail.len();
                let into_a = g.has_edge(trail[1], a);
                let into_b = g.has_edge(trail[n - 2], b);
                match (into_a, into_b) {
                    (true, true) => into_both = true,
                    (false, true) => out_a = true,
                    (true, false) => out_b = true,
                    (false, false) => {
                        debug_assert!(false, "including path out of both ends");
                    }
                }
            }
            let (pa, pb) = (NodeId(i), NodeId(j));
            let marks = if into_both {
                Some((Arrow, Arrow))
            } else if out_a {
                Some((Tail, Arrow))
            } else if out_b {
                Some((Arrow, Tail))
            } else {
                None
            };
            if let Some((ma, mb)) = marks {
                pi.add_edge(pa, pb, ma, mb).expect("fresh pair");
            }
        }
    }
    pi
}

/// Skeleton (all-circle edges) of the including path graph, computed by one
/// d-separation query per pair: visible `A`, `B` are non-adjacent iff the
/// visible ancestors of `{A, B}` separate them.
pub fn ipg_skeleton(g: &Dag) -> MixedGraph {
    let (mut pi, visible) = visible_graph(g);
    for (i, &a) in visible.iter().enumerate() {
        for (j, &b) in visible.iter().enumerate().skip(i + 1) {
            let s: ConditioningSet = visible
                .iter()
                .copied()
                .filter(|&v| v != a && v != b && (g.is_descendant(v, a) || g.is_descendant(v, b)))
                .collect();
            if !d_separated(g, a, b, &s).expect("valid query") {
                pi.add_edge(NodeId(i), NodeId(j), EndpointMark::Circle, EndpointMark::Circle)
                    .expect("fresh pair");
            }
        }
    }
    pi
}

/// Pairs of visible nodes not separated by any visible set of size `<= k`,
/// as an all-circle skeleton. No size guard: cost is `O(n^(k+2))` queries.
pub fn rk_skeleton(g: &Dag, k: usize) -> MixedGraph {
    let (mut pi, visible) = visible_graph(g);
    for (i, &a) in visible.iter().enumerate() {
        for (j, &b) in visible.iter().enumerate().skip(i + 1) {
            if !separable_up_to(g, &visible, a, b, k) {
                pi.add_edge(NodeId(i), NodeId(j), EndpointMark::Circle, EndpointMark::Circle)
                    .expect("fresh pair");
            }
        }
    }
    pi
}

fn others(visible: &[NodeId], a: NodeId, b: NodeId) -> Vec<NodeId> {
    visible.iter().copied().filter(|&v| v != a && v != b).collect()
}

fn separable_up_to(g: &Dag, visible: &[NodeId], a: NodeId, b: NodeId, k: usize) -> bool {
    let rest = others(visible, a, b);
    Subsets::up_to(&rest, k).any(|s| {
        d_separated(g, a, b, &ConditioningSet::new(s)).expect("valid query")
    })
}

/// The r(k)-including path graph of `g`.
///
/// `A - B` is present iff no visible `S` with `|S| <= k` d-separates them.
/// The mark at `A` is a tail iff some visible `S'` with `|S'| <= k - 1`
/// blocks every trail between `B` and `A` whose last edge points into `A`;
/// otherwise it is an arrow. For `k = 0` every edge is bidirected.
pub fn build_rk_ipg(g: &Dag, k: usize) -> Result<RkIpg> {
    let visible = g.visible_nodes();
    if visible.len() > RK_IPG_VISIBLE_LIMIT {
        return Err(Error::SizeGuard {
            what: "visible node count",
            actual: visible.len(),
            limit: RK_IPG_VISIBLE_LIMIT,
        });
    }
    if g.node_count() > RK_IPG_NODE_LIMIT {
        return Err(Error::SizeGuard {
            what: "node count",
            actual: g.node_count(),
            limit: RK_IPG_NODE_LIMIT,
        });
    }
    let (mut pi, _) = visible_graph(g);
    let desc = g.descendant_matrix();
    for (i, &a) in visible.iter().enumerate() {
        for (j, &b) in visible.iter().enumerate().skip(i + 1) {
            if separable_up_to(g, &visible, a, b, k) {
                continue;
            }
            let trails = simple_trails(g, a, b);
            let into_a: Vec<&Vec<NodeId>> =
                trails.iter().filter(|t| g.has_edge(t[1], a)).collect();
            let into_b: Vec<&Vec<NodeId>> = trails
                .iter()
                .filter(|t| g.has_edge(t[t.len() - 2], b))
                .collect();
            let rest = others(&visible, a, b);
            let blockable = |into: &[&Vec<NodeId>]| match k.checked_sub(1) {
                None => false,
                Some(limit) => Subsets::up_to(&rest, limit).any(|s| {
                    let s = ConditioningSet::new(s);
                    !into.iter().any(|t| trail_is_active(g, t, &s, desc))
                }),
            };
            let tail_a = blockable(&into_a);
            let tail_b = blockable(&into_b);
            if tail_a && tail_b {
                return Err(Error::AmbiguousOrientation(
                    g.name(a).to_string(),
                    g.name(b).to_string(),
                ));
            }
            let mark = |tail: bool| if tail { EndpointMark::Tail } else { EndpointMark::Arrow };
            pi.add_edge(NodeId(i), NodeId(j), mark(tail_a), mark(tail_b))
                .expect("fresh pair");
        }
    }
    Ok(RkIpg { graph: pi, k })
}

/// Replaces each `A <-> B` by a fresh parentless hidden node `H_A_B` with
/// edges to `A` and `B`, keeping directed edges. Visible nodes keep their
/// indices; hidden nodes are appended in edge order.
pub(crate) fn hide_bidirected(g: &MixedGraph) -> Result<Dag> {
    let mut dag = Dag::new();
    for v in g.nodes() {
        dag.add_node(g.name(v), Visibility::Visible)?;
    }
    let edges = g.edges();
    for e in &edges {
        if e.has_circle() {
            return Err(Error::CircleMark(
                g.name(e.a).to_string(),
                g.name(e.b).to_string(),
            ));
        }
        if e.mark_a == EndpointMark::Tail && e.mark_b == EndpointMark::Tail {
            return Err(Error::InvalidParameter(format!(
                "undirected edge {} - {}",
                g.name(e.a),
                g.name(e.b)
            )));
        }
    }
    for e in &edges {
        if let Some((from, to)) = e.direction() {
            dag.add_edge(from, to)?;
        }
    }
    for e in edges.iter().filter(|e| e.is_bidirected()) {
        let mut name = format!("H_{}_{}", g.name(e.a), g.name(e.b));
        while dag.node(&name).is_some() {
            name.push('\'');
        }
        let h = dag.add_node(name, Visibility::Hidden)?;
        dag.add_edge(h, e.a)?;
        dag.add_edge(h, e.b)?;
    }
    Ok(dag)
}

/// Full hiding graph of an r(k)-including path graph.
pub fn build_fhg(pi: &RkIpg) -> Result<Dag> {
    hide_bidirected(&pi.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Visibility::{Hidden, Visible};
    use crate::random::random_dag;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use EndpointMark::*;

    fn marks(g: &MixedGraph, a: &str, b: &str) -> Option<(EndpointMark, EndpointMark)> {
        let (a, b) = (g.require(a).unwrap(), g.require(b).unwrap());
        Some((g.mark_at(a, b)?, g.mark_at(b, a)?))
    }

    fn confounded() -> Dag {
        Dag::from_names(
            [("H", Hidden), ("A", Visible), ("B", Visible)],
            [("H", "A"), ("H", "B")],
        )
        .unwrap()
    }

    fn chain() -> Dag {
        Dag::from_names(
            [("A", Visible), ("B", Visible), ("C", Visible)],
            [("A", "B"), ("B", "C")],
        )
        .unwrap()
    }

    #[test]
    fn including_path_graph_examples() {
        let pi = build_including_path_graph(&confounded());
        assert_eq!(pi.edge_count(), 1);
        assert_eq!(marks(&pi, "A", "B"), Some((Arrow, Arrow)));

        let g = Dag::from_names(
            [("A", Visible), ("V", Visible), ("B", Visible)],
            [("A", "V"), ("V", "B")],
        )
        .unwrap();
        let pi = build_including_path_graph(&g);
        assert_eq!(pi.edge_count(), 2);
        assert_eq!(marks(&pi, "A", "V"), Some((Tail, Arrow)));
        assert_eq!(marks(&pi, "V", "B"), Some((Tail, Arrow)));
        assert_eq!(marks(&pi, "A", "B"), None);

        let g = Dag::from_names([("A", Visible), ("B", Visible)], [("A", "B")]).unwrap();
        assert_eq!(marks(&build_including_path_graph(&g), "A", "B"), Some((Tail, Arrow)));
    }

    #[test]
    fn rk_ipg_chain_k1() {
        // Subsets of size <= 1 over {A, B, C}: only {B} separates A and C.
        // Tail at A on A - B: S' = {} blocks the lone trail B..A into A (there is none).
        let pi = build_rk_ipg(&chain(), 1).unwrap();
        let g = pi.graph();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(marks(g, "A", "B"), Some((Tail, Arrow)));
        assert_eq!(marks(g, "B", "C"), Some((Tail, Arrow)));
        assert_eq!(marks(g, "A", "C"), None);
    }

    #[test]
    fn rk_ipg_confounded_pair_is_bidirected_for_every_k() {
        for k in 0..3 {
            let pi = build_rk_ipg(&confounded(), k).unwrap();
            assert_eq!(pi.graph().edge_count(), 1);
            assert_eq!(marks(pi.graph(), "A", "B"), Some((Arrow, Arrow)));
        }
    }

    #[test]
    fn rk_ipg_edge_cases() {
        let g = Dag::from_names([("A", Visible)], []).unwrap();
        assert_eq!(build_rk_ipg(&g, 2).unwrap().graph().edge_count(), 0);

        let mut big = Dag::new();
        for i in 0..13 {
            big.add_node(format!("N{i}"), Visible).unwrap();
        }
        assert!(matches!(build_rk_ipg(&big, 1), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn fhg_examples() {
        let mut pi = MixedGraph::new(["A", "B"]).unwrap();
        pi.add_edge_named("A", Arrow, "B", Arrow).unwrap();
        let f = hide_bidirected(&pi).unwrap();
        let h = f.require("H_A_B").unwrap();
        assert!(f.is_hidden(h));
        assert_eq!(f.edge_count(), 2);
        assert!(f.has_edge(h, NodeId(0)) && f.has_edge(h, NodeId(1)));

        let mut pi = MixedGraph::new(["A", "B"]).unwrap();
        pi.add_edge_named("A", Tail, "B", Arrow).unwrap();
        let f = hide_bidirected(&pi).unwrap();
        assert_eq!(f.edges().collect::<Vec<_>>(), vec![(NodeId(0), NodeId(1))]);

        let mut pi = MixedGraph::new(["A", "B", "C"]).unwrap();
        pi.add_edge_named("A", Tail, "B", Arrow).unwrap();
        pi.add_edge_named("B", Arrow, "C", Arrow).unwrap();
        let f = hide_bidirected(&pi).unwrap();
        let h = f.require("H_B_C").unwrap();
        assert!(f.has_edge(NodeId(0), NodeId(1)));
        assert!(f.has_edge(h, NodeId(1)) && f.has_edge(h, NodeId(2)));
        assert_eq!(f.topological_order().len(), 4);

        let mut pi = MixedGraph::new(["A", "B"]).unwrap();
        pi.add_edge_named("A", Circle, "B", Arrow).unwrap();
        assert!(matches!(hide_bidirected(&pi), Err(Error::CircleMark(..))));
    }

    #[test]
    fn skeleton_routes_agree_with_enumeration() {
        for seed in 0..60 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_dag(6, 2, 0.3, &mut rng);
            let enumerated = build_including_path_graph(&g);
            let by_ancestors = ipg_skeleton(&g);
            let n = g.visible_nodes().len();
            let unrestricted = rk_skeleton(&g, n.saturating_sub(2));
            let pairs = |m: &MixedGraph| m.edges().iter().map(|e| (e.a, e.b)).collect::<Vec<_>>();
            assert_eq!(pairs(&enumerated), pairs(&by_ancestors), "seed {seed}");
            assert_eq!(pairs(&enumerated), pairs(&unrestricted), "seed {seed}");
        }
    }

    #[test]
    fn edge_sets_shrink_as_k_grows() {
        for seed in 0..40 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_dag(6, 2, 0.35, &mut rng);
            for k in 0..3 {
                let small = build_rk_ipg(&g, k).unwrap();
                let large = build_rk_ipg(&g, k + 1).unwrap();
                for e in large.graph().edges() {
                    assert!(small.graph().adjacent(e.a, e.b), "seed {seed} k {k}");
                }
            }
        }
    }
}
