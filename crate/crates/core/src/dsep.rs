//! d-separation over DAGs.
//!
//! [`d_separated`] is a reachability search over `(node, arrival direction)`
//! states. [`active_trail_exists_bruteforce`] enumerates simple trails and
//! checks each one against the active-trail definition; it exists to validate
//! the fast path and is guarded to small graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Dag, NodeId};

/// Node limit for trail enumeration.
pub const BRUTE_FORCE_NODE_LIMIT: usize = 12;

/// Sorted, duplicate-free set of conditioning nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConditioningSet(Vec<NodeId>);

impl ConditioningSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(nodes: impl IntoIterator<Item = NodeId>) -> Self {
        let mut v: Vec<NodeId> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0.iter().copied()
    }

    /// Rejects queries where `x == y` or either endpoint is conditioned on.
    pub fn check_query(&self, x: NodeId, y: NodeId) -> Result<()> {
        if x == y {
            return Err(Error::InvalidQuery(format!("query endpoints coincide at {x}")));
        }
        if self.contains(x) || self.contains(y) {
            return Err(Error::InvalidQuery(format!(
                "conditioning set overlaps query pair {x}, {y}"
            )));
        }
        Ok(())
    }
}

impl FromIterator<NodeId> for ConditioningSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl From<&[NodeId]> for ConditioningSet {
    fn from(v: &[NodeId]) -> Self {
        Self::new(v.iter().copied())
    }
}

/// `true` iff every trail between `x` and `y` is blocked by `s`.
pub fn d_separated(g: &Dag, x: NodeId, y: NodeId, s: &ConditioningSet) -> Result<bool> {
    g.check(x)?;
    g.check(y)?;
    for v in s.iter() {
        g.check(v)?;
    }
    s.check_query(x, y)?;
    Ok(!reachable(g, x, y, s))
}

/// Collider activation: `v` is in `s` or has a descendant in `s`.
fn opens_collider(g: &Dag, v: NodeId, s: &ConditioningSet) -> bool {
    if s.contains(v) {
        return true;
    }
    let desc = &g.descendant_matrix()[v.index()];
    s.iter().any(|w| desc[w.index()])
}

fn reachable(g: &Dag, x: NodeId, y: NodeId, s: &ConditioningSet) -> bool {
    // seen[v][0]: entered v from a child (moving up); seen[v][1]: from a parent.
    let n = g.node_count();
    let mut seen = vec![[false; 2]; n];
    let mut queue = VecDeque::new();
    seen[x.index()][0] = true;
    queue.push_back((x, false));
    while let Some((v, from_parent)) = queue.pop_front() {
        if v == y {
            return true;
        }
        let conditioned = s.contains(v);
        let mut push = |w: NodeId, via_parent: bool, q: &mut VecDeque<(NodeId, bool)>| {
            let slot = &mut seen[w.index()][via_parent as usize];
            if !*slot {
                *slot = true;
                q.push_back((w, via_parent));
            }
        };
        if !from_parent {
            if !conditioned {
                for &p in g.parents(v) {
                    push(p, false, &mut queue);
                }
                for &c in g.children(v) {
                    push(c, true, &mut queue);
                }
            }
        } else {
            if !conditioned {
                for &c in g.children(v) {
                    push(c, true, &mut queue);
                }
            }
            if opens_collider(g, v, s) {
                for &p in g.parents(v) {
                    push(p, false, &mut queue);
                }
            }
        }
    }
    false
}

/// All simple trails from `x` to `y`, visiting every interior node at most once.
pub(crate) fn simple_trails(g: &Dag, x: NodeId, y: NodeId) -> Vec<Vec<NodeId>> {
    fn dfs(
        g: &Dag,
        v: NodeId,
        y: NodeId,
        path: &mut Vec<NodeId>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<NodeId>>,
    ) {
        if v == y {
            out.push(path.clone());
            return;
        }
        for w in g.neighbors(v) {
            if !on_path[w.index()] {
                on_path[w.index()] = true;
                path.push(w);
                dfs(g, w, y, path, on_path, out);
                path.pop();
                on_path[w.index()] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.node_count()];
    on_path[x.index()] = true;
    dfs(g, x, y, &mut vec![x], &mut on_path, &mut out);
    out
}

/// Strict descendants of `v`, computed by a fresh search (no cache).
pub(crate) fn descendants_uncached(g: &Dag, v: NodeId) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    let mut stack: Vec<NodeId> = g.children(v).to_vec();
    while let Some(w) = stack.pop() {
        if !seen[w.index()] {
            seen[w.index()] = true;
            stack.extend_from_slice(g.children(w));
        }
    }
    seen
}

/// Checks one trail against the active-trail definition.
///
/// `descendants[v]` must hold the strict descendants of `v`.
pub(crate) fn trail_is_active(
    g: &Dag,
    trail: &[NodeId],
    s: &ConditioningSet,
    descendants: &[Vec<bool>],
) -> bool {
    trail.windows(3).all(|w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        let collider = g.has_edge(a, b) && g.has_edge(c, b);
        if collider {
            s.contains(b) || s.iter().any(|z| descendants[b.index()][z.index()])
        } else {
            !s.contains(b)
        }
    })
}

/// Enumerates every simple trail between `x` and `y` and reports whether any
/// is active given `s`. Must agree with `!d_separated(..)` everywhere.
pub fn active_trail_exists_bruteforce(
    g: &Dag,
    x: NodeId,
    y: NodeId,
    s: &ConditioningSet,
) -> Result<bool> {
    if g.node_count() > BRUTE_FORCE_NODE_LIMIT {
        return Err(Error::SizeGuard {
            what: "node count",
            actual: g.node_count(),
            limit: BRUTE_FORCE_NODE_LIMIT,
        });
    }
    g.check(x)?;
    g.check(y)?;
    s.check_query(x, y)?;
    let descendants: Vec<Vec<bool>> = g.nodes().map(|v| descendants_uncached(g, v)).collect();
    Ok(simple_trails(g, x, y)
        .iter()
        .any(|t| trail_is_active(g, t, s, &descendants)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Visibility::{Hidden, Visible};
    use crate::random::random_dag;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(g: &Dag, names: &[&str]) -> ConditioningSet {
        names.iter().map(|n| g.require(n).unwrap()).collect()
    }

    fn sep(g: &Dag, x: &str, y: &str, s: &[&str]) -> bool {
        d_separated(g, g.require(x).unwrap(), g.require(y).unwrap(), &set(g, s)).unwrap()
    }

    #[test]
    fn chain_blocked_by_middle() {
        let g = Dag::from_names(
            [("A", Visible), ("B", Visible), ("C", Visible)],
            [("A", "B"), ("B", "C")],
        )
        .unwrap();
        assert!(sep(&g, "A", "C", &["B"]));
        assert!(!sep(&g, "A", "C", &[]));
        let (a, c) = (NodeId(0), NodeId(2));
        assert!(active_trail_exists_bruteforce(&g, a, c, &ConditioningSet::empty()).unwrap());
        assert!(!active_trail_exists_bruteforce(&g, a, c, &set(&g, &["B"])).unwrap());
    }

    #[test]
    fn collider_opens_when_conditioned() {
        let g = Dag::from_names(
            [("A", Visible), ("B", Visible), ("C", Visible), ("D", Visible)],
            [("A", "C"), ("B", "C"), ("C", "D")],
        )
        .unwrap();
        assert!(sep(&g, "A", "B", &[]));
        assert!(!sep(&g, "A", "B", &["C"]));
        assert!(!sep(&g, "A", "B", &["D"]), "descendant of collider");
    }

    #[test]
    fn hidden_common_cause_connects() {
        let g = Dag::from_names(
            [("H", Hidden), ("A", Visible), ("B", Visible)],
            [("H", "A"), ("H", "B")],
        )
        .unwrap();
        assert!(!sep(&g, "A", "B", &[]));
        assert!(sep(&g, "A", "B", &["H"]));
    }

    #[test]
    fn malformed_queries_are_errors() {
        let g = Dag::from_names([("A", Visible), ("B", Visible)], [("A", "B")]).unwrap();
        let (a, b) = (NodeId(0), NodeId(1));
        assert!(d_separated(&g, a, a, &ConditioningSet::empty()).is_err());
        assert!(d_separated(&g, a, b, &ConditioningSet::new([a])).is_err());
        assert!(d_separated(&g, a, NodeId(7), &ConditioningSet::empty()).is_err());
    }

    #[test]
    fn brute_force_guard() {
        let mut g = Dag::new();
        for i in 0..13 {
            g.add_node(format!("N{i}"), Visible).unwrap();
        }
        assert!(matches!(
            active_trail_exists_bruteforce(&g, NodeId(0), NodeId(1), &ConditioningSet::empty()),
            Err(Error::SizeGuard { .. })
        ));
    }

    fn all_subsets(nodes: &[NodeId]) -> impl Iterator<Item = ConditioningSet> + '_ {
        (0u32..(1 << nodes.len())).map(move |mask| {
            nodes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect()
        })
    }

    #[test]
    fn exhaustive_agreement_on_random_six_node_dags() {
        for seed in 0..40 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_dag(6, 0, 0.4, &mut rng);
            for x in g.nodes() {
                for y in g.nodes().filter(|&y| y > x) {
                    let rest: Vec<NodeId> = g.nodes().filter(|&v| v != x && v != y).collect();
                    for s in all_subsets(&rest) {
                        let fast = d_separated(&g, x, y, &s).unwrap();
                        let slow = active_trail_exists_bruteforce(&g, x, y, &s).unwrap();
                        assert_eq!(fast, !slow, "seed {seed} x {x} y {y} s {s:?}");
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn symmetric_and_monotone_under_edge_deletion(seed in any::<u64>(), mask in any::<u16>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_dag(6, 1, 0.35, &mut rng);
            let nodes: Vec<NodeId> = g.nodes().collect();
            let edges: Vec<_> = g.edges().collect();
            for x in g.nodes() {
                for y in g.nodes().filter(|&y| y != x) {
                    let s: ConditioningSet = nodes
                        .iter()
                        .copied()
                        .filter(|&v| v != x && v != y && mask & (1 << v.index()) != 0)
                        .collect();
                    let xy = d_separated(&g, x, y, &s).unwrap();
                    prop_assert_eq!(xy, d_separated(&g, y, x, &s).unwrap());
                    if xy {
                        for &(p, c) in &edges {
                            let mut h = g.clone();
                            h.remove_edge(p, c).unwrap();
                            prop_assert!(d_separated(&h, x, y, &s).unwrap());
                        }
                    }
                }
            }
        }
    }
}
