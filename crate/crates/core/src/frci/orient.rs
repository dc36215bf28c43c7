use crate::error::{Error, Result};
use crate::graph::{EndpointMark, MixedGraph, NodeId, SepsetTable};

use super::discriminating::DiscriminatingSearch;
use super::trace::{Rule, TraceEvent};

use EndpointMark::{Arrow, Circle, Tail};

/// Sets a mark and logs the change.
pub(crate) fn refine(
    g: &mut MixedGraph,
    trace: &mut Vec<TraceEvent>,
    rule: Rule,
    at: NodeId,
    other: NodeId,
    mark: EndpointMark,
) -> Result<bool> {
    let changed = g.set_mark(at, other, mark)?;
    if changed {
        trace.push(TraceEvent {
            rule,
            other,
            other_mark: g.mark_at(other, at).expect("edge just refined"),
            at,
            at_mark: mark,
        });
    }
    Ok(changed)
}

fn sepset_contains(g: &MixedGraph, sepsets: &SepsetTable, a: NodeId, c: NodeId, b: NodeId) -> Result<bool> {
    sepsets
        .contains(a, c, b)
        .ok_or_else(|| Error::MissingSepset(g.name(a).to_string(), g.name(c).to_string()))
}

/// Unshielded triples `(A, B, C)` with `A < C`, ordered by `B`, then `A`, then `C`.
fn unshielded_triples(g: &MixedGraph) -> Vec<(NodeId, NodeId, NodeId)> {
    let mut out = Vec::new();
    for b in g.nodes() {
        let nbrs: Vec<NodeId> = g.neighbors(b).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                if !g.adjacent(a, c) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Step C: every unshielded triple becomes a collider or a recorded non-collider,
/// depending on whether the middle node separated the ends.
pub fn orient_colliders(g: &mut MixedGraph, sepsets: &SepsetTable, trace: &mut Vec<TraceEvent>) -> Result<()> {
    for (a, b, c) in unshielded_triples(g) {
        if sepset_contains(g, sepsets, a, c, b)? {
            g.add_constraint(a, b, c)?;
        } else {
            refine(g, trace, Rule::C, b, a, Arrow)?;
            refine(g, trace, Rule::C, b, c, Arrow)?;
        }
    }
    Ok(())
}

/// Options for [`orientation_closure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    /// D3 fires only when the two neighbours of `M` on the path are adjacent.
    pub require_triangle: bool,
    /// Cap on discriminating path length in nodes; `None` means the node count.
    pub max_path_len: Option<usize>,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        Self {
            require_triangle: true,
            max_path_len: None,
        }
    }
}

/// Step D: applies D1, D2, D4 and D3 until nothing changes, a later rule
/// running only once the earlier ones are exhausted.
pub fn orientation_closure(
    g: &mut MixedGraph,
    sepsets: &SepsetTable,
    options: &ClosureOptions,
    trace: &mut Vec<TraceEvent>,
) -> Result<()> {
    loop {
        if rule_d1(g, trace)? || rule_d2(g, trace)? || rule_d4(g, trace)? {
            continue;
        }
        if rule_d3(g, sepsets, options, trace)? {
            continue;
        }
        return Ok(());
    }
}

/// D1: an edge `A *-* B` alongside a directed path from `A` to `B` gets an arrowhead at `B`.
fn rule_d1(g: &mut MixedGraph, trace: &mut Vec<TraceEvent>) -> Result<bool> {
    let mut changed = false;
    for e in g.edges() {
        for (from, to) in [(e.a, e.b), (e.b, e.a)] {
            if g.mark_at(to, from) != Some(Arrow) && g.has_directed_path(from, to)? {
                changed |= refine(g, trace, Rule::D1, to, from, Arrow)?;
            }
        }
    }
    Ok(changed)
}

/// D2: collider `A *-> B <-* C` with `A`, `C` non-adjacent and a recorded
/// non-collider `A *-* D *-* C` puts an arrowhead at `B` on `B *-* D`.
fn rule_d2(g: &mut MixedGraph, trace: &mut Vec<TraceEvent>) -> Result<bool> {
    let mut changed = false;
    let constraints: Vec<_> = g.constraints().collect();
    for (a, d, c) in constraints {
        if g.adjacent(a, c) {
            continue;
        }
        let nbrs: Vec<NodeId> = g.neighbors(d).collect();
        for b in nbrs {
            if b == a || b == c || !g.adjacent(a, b) || !g.adjacent(c, b) {
                continue;
            }
            if g.is_collider(a, b, c)? && g.mark_at(b, d) != Some(Arrow) {
                changed |= refine(g, trace, Rule::D2, b, d, Arrow)?;
            }
        }
    }
    Ok(changed)
}

/// D4: `P *-> M` with a recorded non-collider `P *-* M *-* R` orients `M -> R`.
fn rule_d4(g: &mut MixedGraph, trace: &mut Vec<TraceEvent>) -> Result<bool> {
    let mut changed = false;
    let constraints: Vec<_> = g.constraints().collect();
    for (a, m, c) in constraints {
        for (p, r) in [(a, c), (c, a)] {
            if g.mark_at(m, p) == Some(Arrow) && !g.is_directed(m, r) {
                changed |= refine(g, trace, Rule::D4, m, r, Tail)?;
                changed |= refine(g, trace, Rule::D4, r, m, Arrow)?;
            }
        }
    }
    Ok(changed)
}

/// D3: for a definite discriminating path between `X` and `Y` for `M`,
/// with `P`, `R` the neighbours of `M` on it, `M` becomes a recorded
/// non-collider if it separated `X` and `Y`, and a collider otherwise.
fn rule_d3(
    g: &mut MixedGraph,
    sepsets: &SepsetTable,
    options: &ClosureOptions,
    trace: &mut Vec<TraceEvent>,
) -> Result<bool> {
    let mut changed = false;
    for m in g.nodes() {
        let nbrs: Vec<NodeId> = g.neighbors(m).collect();
        for (i, &p) in nbrs.iter().enumerate() {
            for &r in &nbrs[i + 1..] {
                if options.require_triangle && !g.adjacent(p, r) {
                    continue;
                }
                if g.has_constraint(p, m, r) || g.is_collider(p, m, r)? {
                    continue;
                }
                // an undetermined triple needs a circle at M on one side
                if g.mark_at(m, p) != Some(Circle) && g.mark_at(m, r) != Some(Circle) {
                    continue;
                }
                let path = DiscriminatingSearch::new(g, options.max_path_len).through(p, m, r, None);
                let Some(path) = path else { continue };
                let (x, y) = (path[0], *path.last().unwrap());
                if sepset_contains(g, sepsets, x, y, m)? {
                    changed |= g.add_constraint(p, m, r)?;
                } else {
                    changed |= refine(g, trace, Rule::D3, m, p, Arrow)?;
                    changed |= refine(g, trace, Rule::D3, m, r, Arrow)?;
                }
            }
        }
    }
    Ok(changed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(names: &[&str], edges: &[(&str, EndpointMark, &str, EndpointMark)]) -> MixedGraph {
        let mut g = MixedGraph::new(names.iter().copied()).unwrap();
        for &(a, ma, b, mb) in edges {
            g.add_edge_named(a, ma, b, mb).unwrap();
        }
        g
    }

    fn marks(g: &MixedGraph, a: &str, b: &str) -> (EndpointMark, EndpointMark) {
        let (a, b) = (g.require(a).unwrap(), g.require(b).unwrap());
        (g.mark_at(a, b).unwrap(), g.mark_at(b, a).unwrap())
    }

    fn n(i: usize) -> NodeId {
        NodeId(i)
    }

    #[test]
    fn collider_gets_arrowheads() {
        let mut g = graph(&["A", "B", "C"], &[("A", Circle, "C", Circle), ("B", Circle, "C", Circle)]);
        let mut sep = SepsetTable::new();
        sep.record(n(0), n(1), &[]).unwrap();
        let mut trace = Vec::new();
        orient_colliders(&mut g, &sep, &mut trace).unwrap();
        assert_eq!(marks(&g, "A", "C"), (Circle, Arrow));
        assert_eq!(marks(&g, "B", "C"), (Circle, Arrow));
        assert_eq!(trace.len(), 2);
        assert!(trace.iter().all(|e| e.rule == Rule::C && e.at == n(2)));
    }

    #[test]
    fn chain_records_constraint() {
        let mut g = graph(&["A", "B", "C"], &[("A", Circle, "B", Circle), ("B", Circle, "C", Circle)]);
        let mut sep = SepsetTable::new();
        sep.record(n(0), n(2), &[n(1)]).unwrap();
        let mut trace = Vec::new();
        orient_colliders(&mut g, &sep, &mut trace).unwrap();
        assert!(g.has_constraint(n(0), n(1), n(2)));
        assert!(trace.is_empty());
        assert!(g.edges().iter().all(|e| e.mark_a == Circle && e.mark_b == Circle));
    }

    #[test]
    fn triangle_is_untouched_and_missing_sepset_errors() {
        let mut g = MixedGraph::complete(["A", "B", "C"]).unwrap();
        let before = g.clone();
        orient_colliders(&mut g, &SepsetTable::new(), &mut Vec::new()).unwrap();
        assert_eq!(g, before);

        let mut g = graph(&["A", "B", "C"], &[("A", Circle, "B", Circle), ("B", Circle, "C", Circle)]);
        let err = orient_colliders(&mut g, &SepsetTable::new(), &mut Vec::new()).unwrap_err();
        assert!(matches!(err, Error::MissingSepset(..)));
    }

    #[test]
    fn d4_orients_away_from_non_collider() {
        let mut g = graph(&["A", "B", "C"], &[("A", Circle, "B", Arrow), ("B", Circle, "C", Circle)]);
        g.add_constraint(n(0), n(1), n(2)).unwrap();
        let mut trace = Vec::new();
        orientation_closure(&mut g, &SepsetTable::new(), &ClosureOptions::default(), &mut trace).unwrap();
        assert_eq!(marks(&g, "B", "C"), (Tail, Arrow));
        assert_eq!(marks(&g, "A", "B"), (Circle, Arrow));
        assert_eq!(trace.iter().filter(|e| e.rule == Rule::D4).count(), 2);
    }

    #[test]
    fn d1_follows_directed_path() {
        let mut g = graph(
            &["A", "X", "B"],
            &[("A", Tail, "X", Arrow), ("X", Tail, "B", Arrow), ("A", Circle, "B", Circle)],
        );
        let mut trace = Vec::new();
        orientation_closure(&mut g, &SepsetTable::new(), &ClosureOptions::default(), &mut trace).unwrap();
        assert_eq!(marks(&g, "A", "B"), (Circle, Arrow));
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].rule, Rule::D1);
    }

    #[test]
    fn d2_points_collider_at_constraint_middle() {
        // A o-> B <-o C, A o-o D o-o C with (A, D, C) recorded, B o-o D
        let mut g = graph(
            &["A", "B", "C", "D"],
            &[
                ("A", Circle, "B", Arrow),
                ("C", Circle, "B", Arrow),
                ("A", Circle, "D", Circle),
                ("C", Circle, "D", Circle),
                ("B", Circle, "D", Circle),
            ],
        );
        g.add_constraint(n(0), n(3), n(2)).unwrap();
        let mut trace = Vec::new();
        orientation_closure(&mut g, &SepsetTable::new(), &ClosureOptions::default(), &mut trace).unwrap();
        assert_eq!(marks(&g, "D", "B"), (Circle, Arrow));
        assert_eq!(trace[0].rule, Rule::D2);
    }

    #[test]
    fn fixpoint_without_premises() {
        let mut g = MixedGraph::complete(["A", "B", "C"]).unwrap();
        let before = g.clone();
        let mut trace = Vec::new();
        orientation_closure(&mut g, &SepsetTable::new(), &ClosureOptions::default(), &mut trace).unwrap();
        assert_eq!(g, before);
        assert!(trace.is_empty());
    }

    fn discriminating_setup(m_separates: bool) -> (MixedGraph, SepsetTable) {
        let g = graph(
            &["X", "V", "M", "Y"],
            &[
                ("X", Circle, "V", Arrow),
                ("V", Arrow, "M", Arrow),
                ("V", Tail, "Y", Arrow),
                ("X", Circle, "M", Arrow),
                ("M", Circle, "Y", Circle),
            ],
        );
        let mut sep = SepsetTable::new();
        let set: Vec<NodeId> = if m_separates { vec![n(1), n(2)] } else { vec![n(1)] };
        sep.record(n(0), n(3), &set).unwrap();
        (g, sep)
    }

    #[test]
    fn d3_collider_when_middle_not_in_sepset() {
        let (mut g, sep) = discriminating_setup(false);
        let mut trace = Vec::new();
        orientation_closure(&mut g, &sep, &ClosureOptions::default(), &mut trace).unwrap();
        assert_eq!(marks(&g, "M", "Y"), (Arrow, Circle));
        assert!(trace.iter().any(|e| e.rule == Rule::D3 && e.at == n(2) && e.other == n(3)));
    }

    #[test]
    fn d3_non_collider_when_middle_in_sepset() {
        let (mut g, sep) = discriminating_setup(true);
        let mut trace = Vec::new();
        orientation_closure(&mut g, &sep, &ClosureOptions::default(), &mut trace).unwrap();
        assert!(g.has_constraint(n(1), n(2), n(3)));
        // D4 then completes V *-> M -> Y
        assert_eq!(marks(&g, "M", "Y"), (Tail, Arrow));
    }
}
