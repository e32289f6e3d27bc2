//! Name-dependent routing schemes sharing one table/label/forwarding core.
//!
//! A scheme is realized as [`SchemeArtifacts`]: one routing table and one
//! label per node. Packets carry the destination's label in a
//! [`PacketHeader`] and every node decides the outgoing port from its own
//! table and that header alone ([`forward`]).
//!
//! Landmark schemes (Cowen-style and Thorup–Zwick-style) store, at node `w`,
//! a shortest-path port for every landmark and for every node of the cluster
//! `C(w) = { v : d(w, v) < d(v, l(v)) }`, where `l(v)` is the landmark
//! nearest to `v`. The label of `v` is `(v, l(v), egress)` with `egress` the
//! port at `l(v)` on a shortest path toward `v`. The two schemes differ only
//! in how landmarks are chosen. Nodes never store an entry for themselves.

mod cowen;
mod forward;
mod landmark;
mod trivial;
mod tz;

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Fingerprint, Graph, NodeId, Port};
use crate::hierarchical::{self, Partition};

pub use cowen::{balls, build_cowen, greedy_ball_cover};
pub use forward::{forward, route, route_len, Decision, DestinationDistances};
pub use landmark::{build_landmark_scheme, cluster_sizes, LandmarkSet};
pub use trivial::{build_trivial, trivial_table};
pub use tz::{build_tz, select_landmarks};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Trivial,
    Cowen,
    Tz,
    Hierarchical,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 4] = [
        SchemeKind::Trivial,
        SchemeKind::Cowen,
        SchemeKind::Tz,
        SchemeKind::Hierarchical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Trivial => "trivial",
            SchemeKind::Cowen => "cowen",
            SchemeKind::Tz => "tz",
            SchemeKind::Hierarchical => "hierarchical",
        }
    }

    /// Schemes whose routes are guaranteed to have stretch at most 3.
    pub fn is_stretch3(self) -> bool {
        matches!(self, SchemeKind::Cowen | SchemeKind::Tz)
    }
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(SchemeKind::Trivial),
            "cowen" => Ok(SchemeKind::Cowen),
            "tz" => Ok(SchemeKind::Tz),
            "hierarchical" | "hier" => Ok(SchemeKind::Hierarchical),
            other => Err(Error::InvalidConfig(format!(
                "unknown scheme {other:?} (expected trivial, cowen, tz or hierarchical)"
            ))),
        }
    }
}

/// Construction parameters. `None` sizes resolve to `ceil(sqrt(n))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    /// Target landmark count for TZ sampling.
    pub s: Option<usize>,
    /// TZ cluster-size cap factor: clusters stay below `cap * n / s`.
    pub cap: f64,
    /// Cowen ball-size exponent: balls hold `ceil(n^alpha)` nodes.
    pub alpha: f64,
    /// Cluster count of the hierarchical baseline.
    pub k: Option<usize>,
}

impl Default for SchemeParams {
    fn default() -> Self {
        SchemeParams {
            s: None,
            cap: 4.0,
            alpha: 1.0 / 3.0,
            k: None,
        }
    }
}

pub fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

impl SchemeParams {
    pub fn resolved_s(&self, n: usize) -> usize {
        self.s.unwrap_or_else(|| ceil_sqrt(n))
    }

    pub fn resolved_k(&self, n: usize) -> usize {
        self.k.unwrap_or_else(|| ceil_sqrt(n))
    }
}

/// Builds artifacts of the requested kind with the given parameters. The
/// seed drives TZ landmark sampling and hierarchical seed selection.
pub fn build_scheme(
    g: &Graph,
    kind: SchemeKind,
    params: &SchemeParams,
    seed: u64,
) -> Result<SchemeArtifacts> {
    let n = g.node_count();
    match kind {
        SchemeKind::Trivial => build_trivial(g),
        SchemeKind::Cowen => build_cowen(g, params.alpha, seed),
        SchemeKind::Tz => build_tz(g, params.resolved_s(n), params.cap, seed),
        SchemeKind::Hierarchical => {
            let p = hierarchical::partition_bfs(g, params.resolved_k(n), seed)?;
            hierarchical::build_hier(g, &p)
        }
    }
}

/// Destination-to-port map held by one node, sorted by destination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingTable {
    pub owner: NodeId,
    entries: Vec<(NodeId, Port)>,
}

impl RoutingTable {
    pub fn new(owner: NodeId, mut entries: Vec<(NodeId, Port)>) -> Self {
        entries.sort_unstable();
        entries.dedup_by_key(|e| e.0);
        RoutingTable { owner, entries }
    }

    #[inline]
    pub fn get(&self, dest: NodeId) -> Option<Port> {
        self.entries
            .binary_search_by_key(&dest, |e| e.0)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn contains(&self, dest: NodeId) -> bool {
        self.get(dest).is_some()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(NodeId, Port)] {
        &self.entries
    }

    pub fn destinations(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.entries.iter().map(|e| e.0)
    }
}

/// Address of a landmark-scheme node: the node, its nearest landmark and the
/// port at that landmark leading toward the node (`None` for landmarks).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeLabel {
    pub node: NodeId,
    pub landmark: NodeId,
    pub landmark_egress: Option<Port>,
}

/// Address of a hierarchical-baseline node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterLabel {
    pub node: NodeId,
    pub cluster: u32,
    pub leader: NodeId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    /// Bare node id (trivial scheme).
    Id(NodeId),
    Landmark(NodeLabel),
    Cluster(ClusterLabel),
}

impl Label {
    pub fn node(&self) -> NodeId {
        match *self {
            Label::Id(v) => v,
            Label::Landmark(l) => l.node,
            Label::Cluster(c) => c.node,
        }
    }
}

/// What a packet carries; read-only while in flight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PacketHeader {
    destination: Label,
}

impl PacketHeader {
    pub fn new(destination: Label) -> Self {
        PacketHeader { destination }
    }

    pub fn destination(&self) -> &Label {
        &self.destination
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableSet {
    /// Full shortest-path tables (`n - 1` entries per node), not
    /// materialized; entries are derived from the graph on demand.
    ShortestPath,
    Explicit(Vec<RoutingTable>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemeArtifacts {
    pub kind: SchemeKind,
    pub fingerprint: Fingerprint,
    pub(crate) node_count: usize,
    pub(crate) tables: TableSet,
    pub(crate) labels: Vec<Label>,
    pub(crate) landmarks: Option<LandmarkSet>,
    pub(crate) partition: Option<Partition>,
}

impl SchemeArtifacts {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn label(&self, v: NodeId) -> &Label {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn header_for(&self, dst: NodeId) -> PacketHeader {
        PacketHeader::new(self.labels[dst as usize])
    }

    pub fn landmarks(&self) -> Option<&LandmarkSet> {
        self.landmarks.as_ref()
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn tables(&self) -> &TableSet {
        &self.tables
    }

    pub fn explicit_table(&self, v: NodeId) -> Option<&RoutingTable> {
        match &self.tables {
            TableSet::Explicit(t) => Some(&t[v as usize]),
            TableSet::ShortestPath => None,
        }
    }

    /// Routing table of `v`, materialized on demand for the trivial scheme.
    pub fn table<'a>(&'a self, g: &Graph, v: NodeId) -> Cow<'a, RoutingTable> {
        match &self.tables {
            TableSet::Explicit(t) => Cow::Borrowed(&t[v as usize]),
            TableSet::ShortestPath => Cow::Owned(trivial_table(g, v)),
        }
    }

    pub fn table_len(&self, v: NodeId) -> usize {
        match &self.tables {
            TableSet::Explicit(t) => t[v as usize].len(),
            TableSet::ShortestPath => self.node_count.saturating_sub(1),
        }
    }

    pub fn table_sizes(&self) -> Vec<usize> {
        (0..self.node_count as NodeId).map(|v| self.table_len(v)).collect()
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if g.node_count() != self.node_count || g.edge_count() != self.fingerprint.m {
            return Err(Error::MalformedArtifacts(format!(
                "artifacts were built for {} but graph is n={} m={}",
                self.fingerprint,
                g.node_count(),
                g.edge_count()
            )));
        }
        Ok(())
    }

    /// JSON layout: tables as `[[destination, port], ...]` per node,
    /// labels as `[node, landmark|cluster, egress|leader]` triples (bare
    /// ids for the trivial scheme).
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let tables: Vec<Vec<[u32; 2]>> = g
            .nodes()
            .map(|v| {
                self.table(g, v)
                    .entries()
                    .iter()
                    .map(|&(d, p)| [d, p])
                    .collect()
            })
            .collect();
        let labels: Vec<serde_json::Value> = self
            .labels
            .iter()
            .map(|l| match *l {
                Label::Id(v) => serde_json::json!(v),
                Label::Landmark(l) => serde_json::json!([l.node, l.landmark, l.landmark_egress]),
                Label::Cluster(c) => serde_json::json!([c.node, c.cluster, c.leader]),
            })
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "fingerprint": self.fingerprint,
            "original_ids": g.original_ids(),
            "landmarks": self.landmarks.as_ref().map(|l| l.members()),
            "partition": self.partition,
            "tables": tables,
            "labels": labels,
        })
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_sqrt_values() {
        for (n, r) in [(1, 1), (2, 2), (4, 2), (5, 3), (9, 3), (10, 4), (10_000, 100), (10_001, 101)] {
            assert_eq!(ceil_sqrt(n), r, "n={n}");
        }
    }

    #[test]
    fn routing_table_lookup() {
        let t = RoutingTable::new(0, vec![(5, 1), (2, 0), (9, 2)]);
        assert_eq!(t.get(2), Some(0));
        assert_eq!(t.get(9), Some(2));
        assert_eq!(t.get(3), None);
        assert_eq!(t.destinations().collect::<Vec<_>>(), vec![2, 5, 9]);
    }

    #[test]
    fn scheme_names_round_trip() {
        for k in SchemeKind::ALL {
            assert_eq!(k.name().parse::<SchemeKind>().unwrap(), k);
        }
        assert!("bgp".parse::<SchemeKind>().is_err());
    }
}
