use std::fmt;

use thiserror::Error;

/// Pipeline stage, used to tag errors raised inside [`crate::frci::fr_k_ci`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Skeleton,
    Colliders,
    Closure,
    Finalize,
    Extract,
    InsertHidden,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Skeleton => "skeleton",
            Stage::Colliders => "colliders",
            Stage::Closure => "orientation closure",
            Stage::Finalize => "finalize",
            Stage::Extract => "dag extraction",
            Stage::InsertHidden => "hidden insertion",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate node name `{0}`")]
    DuplicateName(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {0} - {1}")]
    DuplicateEdge(String, String),
    #[error("edge {0} -> {1} would create a directed cycle")]
    Cycle(String, String),
    #[error("no edge between {0} and {1}")]
    MissingEdge(String, String),
    #[error("contradictory mark at {at} on edge {at} - {other}: {existing} cannot become {requested}")]
    MarkConflict {
        at: String,
        other: String,
        existing: crate::graph::EndpointMark,
        requested: crate::graph::EndpointMark,
    },
    #[error("non-collider constraint {0} {1} {2} contradicts arrowheads at {1}")]
    ConstraintConflict(String, String, String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("edge {0} - {1} still carries a circle mark")]
    CircleMark(String, String),
    #[error("edge {0} - {1} qualifies as out of both endpoints")]
    AmbiguousOrientation(String, String),
    #[error("no legally removable node among {0} remaining")]
    NoRemovableNode(usize),
    #[error("missing separating set for non-adjacent pair {0}, {1}")]
    MissingSepset(String, String),
    #[error("invalid distribution for `{node}`: {reason}")]
    InvalidCpt { node: String, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid dataset: {0}")]
    InvalidData(String),
    #[error("{stage} failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
        trace: Vec<crate::frci::TraceEvent>,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input documents,
    /// as opposed to invariant breaches inside the algorithms.
    pub fn is_data_error(&self) -> bool {
        match self {
            Error::UnknownNode(_)
            | Error::DuplicateName(_)
            | Error::SelfLoop(_)
            | Error::DuplicateEdge(..)
            | Error::Cycle(..)
            | Error::InvalidCpt { .. }
            | Error::InvalidParameter(_)
            | Error::InvalidData(_)
            | Error::SizeGuard { .. }
            | Error::Json(_)
            | Error::Csv(_)
            | Error::Io(_) => true,
            Error::Stage { source, .. } => source.is_data_error(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
