use serde::{Deserialize, Serialize};

use super::SchemeEvaluation;
use crate::error::{Error, Result};
use crate::graph::Fingerprint;
use crate::schemes::SchemeKind;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub scheme: SchemeKind,
    pub avg_table: f64,
    pub max_table: usize,
    pub avg_stretch: f64,
    pub max_stretch: f64,
    pub avg_stretch_len1: f64,
    pub violating_adjacencies: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub fingerprint: Fingerprint,
    pub rows: Vec<ComparisonRow>,
}

/// Aligns evaluations of several schemes on one graph, one row each, in
/// input order. Evaluations from different graphs are rejected.
pub fn compare(evals: &[SchemeEvaluation]) -> Result<ComparisonTable> {
    let first = evals
        .first()
        .ok_or_else(|| Error::InvalidConfig("nothing to compare".into()))?;
    let fp = first.fingerprint().clone();
    let mut rows = Vec::with_capacity(evals.len());
    for e in evals {
        for other in [&e.stretch.fingerprint, &e.tables.fingerprint, &e.reinsertion.fingerprint] {
            if *other != fp {
                return Err(Error::FingerprintMismatch(fp.to_string(), other.to_string()));
            }
        }
        rows.push(ComparisonRow {
            scheme: e.kind(),
            avg_table: e.tables.avg_entries,
            max_table: e.tables.max_entries,
            avg_stretch: e.stretch.avg_stretch,
            max_stretch: e.stretch.max_stretch,
            avg_stretch_len1: e.stretch.avg_stretch_len1,
            violating_adjacencies: e.reinsertion.violating_adjacencies,
        });
    }
    Ok(ComparisonTable { fingerprint: fp, rows })
}
