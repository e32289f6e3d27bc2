//! Measurement of the stretch / table-size trade-off.
//!
//! Every report records the [`Fingerprint`] of the graph it was measured on.
//! Pairs are ordered: `(u, v)` and `(v, u)` are routed separately. Results
//! are identical for any number of worker threads.

mod compare;
pub mod report;
mod stretch;
mod sweep;
mod tables;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Fingerprint, Graph};
use crate::schemes::{SchemeArtifacts, SchemeKind};

pub use compare::{compare, ComparisonRow, ComparisonTable};
pub use stretch::{measure_stretch, StretchReport, STRETCH_BUCKETS};
pub use sweep::{sweep, SweepConfig, SweepExponent, SweepPoint, SweepReport};
pub use tables::{neighbor_reinsertion, table_stats, ReinsertionReport, TableStats};

/// Stretch, table and reinsertion measurements of one scheme on one graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeEvaluation {
    pub stretch: StretchReport,
    pub tables: TableStats,
    pub reinsertion: ReinsertionReport,
}

impl SchemeEvaluation {
    pub fn kind(&self) -> SchemeKind {
        self.stretch.kind
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.stretch.fingerprint
    }
}

pub fn evaluate(art: &SchemeArtifacts, g: &Graph, pair_budget: u64, seed: u64) -> Result<SchemeEvaluation> {
    Ok(SchemeEvaluation {
        stretch: measure_stretch(art, g, pair_budget, seed)?,
        tables: table_stats(art),
        reinsertion: neighbor_reinsertion(art, g)?,
    })
}
