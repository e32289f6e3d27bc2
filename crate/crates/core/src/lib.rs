//! Compact routing laboratory.
//!
//! Builds name-dependent compact routing schemes (Cowen-style and
//! Thorup–Zwick-style landmark schemes), a trivial shortest-path baseline and
//! a two-level hierarchical baseline on AS-level or synthetic scale-free
//! graphs, then measures routing-table size, stretch, neighbor reinsertion
//! and how those quantities scale with network size.

pub mod cli;
pub mod error;
pub mod eval;
pub mod graph;
pub mod hierarchical;
pub mod rng;
pub mod schemes;
pub mod topology;

pub use error::{Error, Result};
pub use graph::{bfs, BfsTree, Graph, GraphStats, NodeId, Port};
pub use schemes::{SchemeArtifacts, SchemeKind, SchemeParams};
