use std::io;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate edge ({u}, {v}) at line {line}")]
    DuplicateEdge { line: usize, u: u64, v: u64 },

    #[error("self-loop on node {node} at line {line}")]
    SelfLoop { line: usize, node: u64 },

    #[error("graph is empty")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components); extract the giant component first")]
    Disconnected { components: usize },

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: u64, n: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("log-log fit needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("log-log fit needs positive coordinates, got ({x}, {y})")]
    NonPositivePoint { x: f64, y: f64 },

    #[error("landmark set does not cover the graph: {0}")]
    LandmarkCoverage(String),

    #[error("malformed routing artifacts: {0}")]
    MalformedArtifacts(String),

    #[error("routing loop from {src} to {dst}: cycle {cycle:?}")]
    RoutingLoop {
        src: NodeId,
        dst: NodeId,
        cycle: Vec<NodeId>,
    },

    #[error("stretch bound violated: {kind} routed {src}->{dst} in {routed} hops, shortest is {shortest}")]
    StretchBound {
        kind: String,
        src: NodeId,
        dst: NodeId,
        routed: u32,
        shortest: u32,
    },

    #[error("reports come from different graphs: {0} vs {1}")]
    FingerprintMismatch(String, String),

    #[error("sweep failed at n = {n}: {source}")]
    Sweep {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },

    #[error("serialization: {0}")]
    Serde(String),
}

impl Error {
    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// True for errors caused by bad input data or files rather than by
    /// invalid flags or internal invariant failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DuplicateEdge { .. }
                | Error::SelfLoop { .. }
                | Error::EmptyGraph
                | Error::Disconnected { .. }
                | Error::Parse { .. }
                | Error::Io { .. }
                | Error::FingerprintMismatch(..)
                | Error::Serde(_)
        )
    }

    /// True for violated internal guarantees (routing loops, stretch bound).
    pub fn is_internal_assertion(&self) -> bool {
        match self {
            Error::RoutingLoop { .. } | Error::StretchBound { .. } | Error::MalformedArtifacts(_) => {
                true
            }
            Error::Sweep { source, .. } => source.is_internal_assertion(),
            _ => false,
        }
    }
}
