//! CSV and JSON report files.
//!
//! Column orders are fixed by the `*_COLUMNS` constants. Every CSV has a
//! JSON mirror holding the same records under the same field names.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{ComparisonTable, ReinsertionReport, StretchReport, SweepReport, TableStats, STRETCH_BUCKETS};
use crate::error::{Error, Result};
use crate::graph::Fingerprint;

pub const STRETCH_COLUMNS: [&str; 13] = [
    "scheme",
    "n",
    "m",
    "edges_sha256",
    "mode",
    "seed",
    "pair_count",
    "avg_stretch",
    "max_stretch",
    "frac_shortest",
    "adjacent_pairs",
    "avg_stretch_len1",
    "stretch_histogram",
];

pub const TABLE_COLUMNS: [&str; 8] = [
    "scheme",
    "n",
    "m",
    "edges_sha256",
    "avg_entries",
    "max_entries",
    "centers",
    "histogram",
];

pub const REINSERTION_COLUMNS: [&str; 10] = [
    "scheme",
    "n",
    "m",
    "edges_sha256",
    "adjacent_pairs",
    "violating_adjacencies",
    "base_avg_table",
    "base_max_table",
    "augmented_avg_table",
    "augmented_max_table",
];

pub const SWEEP_COLUMNS: [&str; 13] = [
    "scheme",
    "requested_n",
    "n",
    "m",
    "gen_seed",
    "build_seed",
    "avg_table",
    "max_table",
    "avg_stretch",
    "max_stretch",
    "avg_stretch_len1",
    "violating_adjacencies",
    "augmented_avg_table",
];

pub const EXPONENT_COLUMNS: [&str; 3] = ["scheme", "avg_table_exponent", "max_table_exponent"];

pub const COMPARISON_COLUMNS: [&str; 8] = [
    "scheme",
    "edges_sha256",
    "avg_table",
    "max_table",
    "avg_stretch",
    "max_stretch",
    "avg_stretch_len1",
    "violating_adjacencies",
];

fn graph_cells(fp: &Fingerprint) -> [String; 3] {
    [fp.n.to_string(), fp.m.to_string(), fp.edges_sha256.clone()]
}

fn csv_err(e: csv::Error) -> Error {
    Error::Serde(e.to_string())
}

fn write_rows<W: Write>(w: W, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header).map_err(csv_err)?;
    for r in rows {
        out.write_record(&r).map_err(csv_err)?;
    }
    out.flush().map_err(|e| Error::io("flushing csv", e))
}

/// Histogram buckets as `label:count` joined by `;`.
fn stretch_hist_cell(h: &[u64]) -> String {
    STRETCH_BUCKETS
        .iter()
        .zip(h)
        .map(|(l, c)| format!("{l}:{c}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn write_stretch_csv<W: Write>(w: W, reports: &[StretchReport]) -> Result<()> {
    let rows = reports
        .iter()
        .map(|r| {
            let seed = match r.mode {
                crate::graph::PairMode::Sampled { seed } => seed.to_string(),
                crate::graph::PairMode::Exact => String::new(),
            };
            let [n, m, sha] = graph_cells(&r.fingerprint);
            vec![
                r.kind.to_string(),
                n,
                m,
                sha,
                r.mode.label().to_string(),
                seed,
                r.pair_count.to_string(),
                r.avg_stretch.to_string(),
                r.max_stretch.to_string(),
                r.frac_shortest.to_string(),
                r.adjacent_pairs.to_string(),
                r.avg_stretch_len1.to_string(),
                stretch_hist_cell(&r.stretch_histogram),
            ]
        })
        .collect();
    write_rows(w, &STRETCH_COLUMNS, rows)
}

pub fn write_tables_csv<W: Write>(w: W, stats: &[TableStats]) -> Result<()> {
    let rows = stats
        .iter()
        .map(|t| {
            let [n, m, sha] = graph_cells(&t.fingerprint);
            let hist = t
                .histogram
                .iter()
                .map(|(s, c)| format!("{s}:{c}"))
                .collect::<Vec<_>>()
                .join(";");
            vec![
                t.kind.to_string(),
                n,
                m,
                sha,
                t.avg_entries.to_string(),
                t.max_entries.to_string(),
                t.centers.to_string(),
                hist,
            ]
        })
        .collect();
    write_rows(w, &TABLE_COLUMNS, rows)
}

pub fn write_reinsertion_csv<W: Write>(w: W, reports: &[ReinsertionReport]) -> Result<()> {
    let rows = reports
        .iter()
        .map(|r| {
            let [n, m, sha] = graph_cells(&r.fingerprint);
            vec![
                r.kind.to_string(),
                n,
                m,
                sha,
                r.adjacent_pairs.to_string(),
                r.violating_adjacencies.to_string(),
                r.base_avg_table.to_string(),
                r.base_max_table.to_string(),
                r.augmented_avg_table.to_string(),
                r.augmented_max_table.to_string(),
            ]
        })
        .collect();
    write_rows(w, &REINSERTION_COLUMNS, rows)
}

pub fn write_sweep_csv<W: Write>(w: W, report: &SweepReport) -> Result<()> {
    let rows = report
        .points
        .iter()
        .map(|p| {
            vec![
                p.scheme.to_string(),
                p.requested_n.to_string(),
                p.n.to_string(),
                p.m.to_string(),
                p.gen_seed.to_string(),
                p.build_seed.to_string(),
                p.avg_table.to_string(),
                p.max_table.to_string(),
                p.avg_stretch.to_string(),
                p.max_stretch.to_string(),
                p.avg_stretch_len1.to_string(),
                p.violating_adjacencies.to_string(),
                p.augmented_avg_table.to_string(),
            ]
        })
        .collect();
    write_rows(w, &SWEEP_COLUMNS, rows)
}

pub fn write_exponents_csv<W: Write>(w: W, report: &SweepReport) -> Result<()> {
    let rows = report
        .fitted_exponents
        .iter()
        .map(|e| {
            vec![
                e.scheme.to_string(),
                e.avg_table_exponent.to_string(),
                e.max_table_exponent.to_string(),
            ]
        })
        .collect();
    write_rows(w, &EXPONENT_COLUMNS, rows)
}

pub fn write_comparison_csv<W: Write>(w: W, table: &ComparisonTable) -> Result<()> {
    let rows = table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.scheme.to_string(),
                table.fingerprint.edges_sha256.clone(),
                r.avg_table.to_string(),
                r.max_table.to_string(),
                r.avg_stretch.to_string(),
                r.max_stretch.to_string(),
                r.avg_stretch_len1.to_string(),
                r.violating_adjacencies.to_string(),
            ]
        })
        .collect();
    write_rows(w, &COMPARISON_COLUMNS, rows)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Serde(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)?).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Writes a CSV produced by `f` to `path`.
pub fn write_csv_file(path: &Path, f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    fs::write(path, buf).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}
