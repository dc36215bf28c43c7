//! Causal structure discovery under latent confounding with bounded
//! conditioning sets.
//!
//! The pipeline runs from an [`IndependenceOracle`] (a perfect d-separation
//! oracle or a G² test over samples) through [`fr_k_ci`] to a belief network
//! structure in which every latent common cause is an explicit hidden node.
//! [`ipg`] builds the reference graphs a run is judged against, and
//! [`verify`] compares independence models.

pub mod alarm;
pub mod bayesnet;
pub mod dsep;
pub mod error;
pub mod frci;
pub mod graph;
pub mod independence;
pub mod ipg;
pub mod random;
mod subsets;
pub mod verify;

pub use dsep::{d_separated, ConditioningSet};
pub use error::{Error, Result};
pub use frci::{fr_k_ci, FrkciConfig, FrkciResult};
pub use graph::{Dag, EndpointMark, MixedGraph, NodeId, Visibility};
pub use independence::{GSquaredTest, IndependenceOracle, PerfectOracle};
