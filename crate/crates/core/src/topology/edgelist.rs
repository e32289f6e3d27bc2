use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parses `u v` lines (whitespace-separated non-negative integers, `#`
/// comments). Duplicate edges and self-loops are rejected with their line.
pub fn parse_edge_list(reader: impl BufRead) -> Result<Graph> {
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(format!("reading line {lineno}"), e))?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut it = body.split_whitespace();
        let mut id = || -> Result<u64> {
            let tok = it.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two node ids".into(),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid node id {tok:?}"),
            })
        };
        let (u, v) = (id()?, id()?);
        if it.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "expected exactly two node ids".into(),
            });
        }
        edges.push((lineno, u, v));
    }
    Graph::from_numbered_edges(edges)
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    let f = File::open(path).map_err(|e| Error::io(format!("opening {}", path.display()), e))?;
    parse_edge_list(BufReader::new(f))
}

/// Writes every edge once as `orig_u orig_v`, preceded by a `# n= m=` header.
pub fn write_edge_list(g: &Graph, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "# n={} m={}", g.node_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", g.original_id(u), g.original_id(v))?;
    }
    w.flush()
}
