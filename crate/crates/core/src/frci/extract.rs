use crate::error::{Error, Result};
use crate::graph::{Dag, EndpointMark, MixedGraph, NodeId};
use crate::ipg::hide_bidirected;

use super::orient::refine;
use super::trace::{Rule, TraceEvent};

use EndpointMark::{Arrow, Circle, Tail};

/// Step E: every `A o-> B` becomes `A -> B`.
pub fn finalize_orientations(g: &mut MixedGraph, trace: &mut Vec<TraceEvent>) -> Result<()> {
    for e in g.edges() {
        match (e.mark_a, e.mark_b) {
            (Circle, Arrow) => {
                refine(g, trace, Rule::E, e.a, e.b, Tail)?;
            }
            (Arrow, Circle) => {
                refine(g, trace, Rule::E, e.b, e.a, Tail)?;
            }
            _ => {}
        }
    }
    Ok(())
}

/// Step F: removes legally removable nodes from a scratch copy, lowest index
/// first; each `A o-o B` removed with `A` is oriented `A <- B` in the result.
pub fn extract_dag(g: &MixedGraph, trace: &mut Vec<TraceEvent>) -> Result<MixedGraph> {
    let mut out = g.clone();
    let mut scratch = g.clone();
    let mut removed = vec![false; g.node_count()];
    for remaining in (1..=g.node_count()).rev() {
        let a = scratch
            .nodes()
            .find(|&v| !removed[v.index()] && scratch.legally_removable(v))
            .ok_or(Error::NoRemovableNode(remaining))?;
        let nbrs: Vec<NodeId> = scratch.neighbors(a).collect();
        for b in nbrs {
            if scratch.mark_at(a, b) == Some(Circle) && scratch.mark_at(b, a) == Some(Circle) {
                refine(&mut out, trace, Rule::F, a, b, Arrow)?;
                refine(&mut out, trace, Rule::F, b, a, Tail)?;
            }
        }
        scratch.isolate(a);
        removed[a.index()] = true;
    }
    Ok(out)
}

/// Step G: each `A <-> B` becomes a parentless hidden node `H_A_B` with
/// edges into `A` and `B`.
pub fn insert_hidden(g: &MixedGraph) -> Result<Dag> {
    hide_bidirected(g)
}
