use super::{Label, RoutingTable, SchemeArtifacts, SchemeKind, TableSet};
use crate::error::Result;
use crate::graph::{BfsScratch, Graph, NodeId, Port, UNREACHABLE};

/// Trivial shortest-path routing: every node holds a port for each of the
/// other `n - 1` nodes, namely the port toward the smallest-id neighbor on
/// a shortest path. Tables are kept implicit (`n^2` entries do not fit in
/// memory at sweep sizes); [`trivial_table`] materializes one on demand.
pub fn build_trivial(g: &Graph) -> Result<SchemeArtifacts> {
    g.ensure_connected()?;
    Ok(SchemeArtifacts {
        kind: SchemeKind::Trivial,
        fingerprint: g.fingerprint(),
        node_count: g.node_count(),
        tables: TableSet::ShortestPath,
        labels: g.nodes().map(Label::Id).collect(),
        landmarks: None,
        partition: None,
    })
}

/// Full shortest-path table of `w`: for destination `t`, the first port at
/// `w` whose neighbor is one hop closer to `t`.
pub fn trivial_table(g: &Graph, w: NodeId) -> RoutingTable {
    let n = g.node_count();
    let mut own = BfsScratch::new(n);
    own.run(g, w, u32::MAX);
    let mut port: Vec<Option<Port>> = vec![None; n];
    let mut scratch = BfsScratch::new(n);
    for (p, &x) in g.neighbors(w).iter().enumerate() {
        scratch.run(g, x, u32::MAX);
        for t in g.nodes() {
            let d = scratch.dist(t);
            if t != w && port[t as usize].is_none() && d != UNREACHABLE && d + 1 == own.dist(t) {
                port[t as usize] = Some(p as Port);
            }
        }
    }
    let entries = port
        .iter()
        .enumerate()
        .filter_map(|(t, p)| p.map(|p| (t as NodeId, p)))
        .collect();
    RoutingTable::new(w, entries)
}
