//! Graph representations shared by every stage of the pipeline.
//!
//! Nodes are addressed by dense indices ([`NodeId`]) that are stable within
//! one graph; display names live on the graph itself. Iteration over nodes,
//! neighbours and edges is always in ascending index order.

mod dag;
mod dot;
mod mixed;
mod sepset;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use dag::{Dag, Visibility};
pub use dot::{dag_from_dot, dag_to_dot, mixed_to_dot};
pub use mixed::{Edge, MixedGraph};
pub use sepset::SepsetTable;

/// Dense node index, `0..n` within one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Mark at one end of a mixed-graph edge.
///
/// `A o-> B` is stored as `Circle` at `A` and `Arrow` at `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndpointMark {
    Tail,
    Arrow,
    Circle,
}

impl EndpointMark {
    /// Token used in trace files.
    pub fn token(self) -> &'static str {
        match self {
            EndpointMark::Tail => "tail",
            EndpointMark::Arrow => "arrow",
            EndpointMark::Circle => "circle",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "tail" => Some(EndpointMark::Tail),
            "arrow" => Some(EndpointMark::Arrow),
            "circle" => Some(EndpointMark::Circle),
            _ => None,
        }
    }
}

impl fmt::Display for EndpointMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Unordered node pair stored as `(min, max)`.
#[inline]
pub(crate) fn ordered_pair(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
