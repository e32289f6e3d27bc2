//! Two-level hierarchical routing baseline.
//!
//! Nodes are grouped into connected clusters, each with a leader. A node
//! stores a port for every other member of its own cluster (shortest paths
//! inside the cluster) and a single port per foreign cluster, pointing toward
//! that cluster's leader. Packets for a foreign cluster head for its leader
//! until they enter the destination's cluster, then follow the intra-cluster
//! shortest path.

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BfsScratch, Graph, NodeId, Port, UNREACHABLE};
use crate::rng;
use crate::schemes::{
    route, ClusterLabel, Label, PacketHeader, RoutingTable, SchemeArtifacts, SchemeKind, TableSet,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    cluster_of: Vec<u32>,
    leader_of: Vec<NodeId>,
}

impl Partition {
    /// Validates an explicit assignment: every leader belongs to its own
    /// cluster and every cluster induces a connected subgraph.
    pub fn new(g: &Graph, cluster_of: Vec<u32>, leader_of: Vec<NodeId>) -> Result<Self> {
        let n = g.node_count();
        if cluster_of.len() != n {
            return Err(Error::InvalidConfig(format!(
                "partition assigns {} nodes, graph has {n}",
                cluster_of.len()
            )));
        }
        let k = leader_of.len();
        if let Some(v) = cluster_of.iter().position(|&c| c as usize >= k) {
            return Err(Error::InvalidConfig(format!("node {v} has no valid cluster")));
        }
        for (c, &l) in leader_of.iter().enumerate() {
            if l as usize >= n || cluster_of[l as usize] as usize != c {
                return Err(Error::InvalidConfig(format!(
                    "leader {l} is not a member of cluster {c}"
                )));
            }
        }
        let p = Partition {
            cluster_of,
            leader_of,
        };
        let mut scratch = vec![UNREACHABLE; n];
        for c in 0..k as u32 {
            let reached = p.restricted_bfs(g, p.leader_of[c as usize], &mut scratch);
            let size = p.cluster_of.iter().filter(|&&x| x == c).count();
            if reached.len() != size {
                return Err(Error::InvalidConfig(format!("cluster {c} is not connected")));
            }
            for v in reached {
                scratch[v as usize] = UNREACHABLE;
            }
        }
        Ok(p)
    }

    pub fn cluster_of(&self, v: NodeId) -> u32 {
        self.cluster_of[v as usize]
    }

    pub fn leader_of(&self, c: u32) -> NodeId {
        self.leader_of[c as usize]
    }

    pub fn cluster_count(&self) -> usize {
        self.leader_of.len()
    }

    pub fn members(&self, c: u32) -> Vec<NodeId> {
        (0..self.cluster_of.len() as NodeId)
            .filter(|&v| self.cluster_of[v as usize] == c)
            .collect()
    }

    /// BFS from `src` that never leaves `src`'s cluster. Leaves distances in
    /// `dist` (caller resets the returned nodes) and returns visit order.
    fn restricted_bfs(&self, g: &Graph, src: NodeId, dist: &mut [u32]) -> Vec<NodeId> {
        let c = self.cluster_of(src);
        let mut order = vec![src];
        dist[src as usize] = 0;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if self.cluster_of(w) == c && dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = dist[u as usize] + 1;
                    order.push(w);
                }
            }
        }
        order
    }
}

/// Partition grown from `k` uniformly sampled seeds by synchronized
/// multi-source BFS. A node joins the first seed to reach it; simultaneous
/// arrivals go to the smaller seed id. Seeds lead their clusters, and
/// clusters are numbered by ascending leader id.
pub fn partition_bfs(g: &Graph, k: usize, seed: u64) -> Result<Partition> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!("k must be in [1, {n}], got {k}")));
    }
    g.ensure_connected()?;
    let mut rng = rng::stream(seed);
    let mut seeds: Vec<NodeId> = index::sample(&mut rng, n, k)
        .into_iter()
        .map(|v| v as NodeId)
        .collect();
    seeds.sort_unstable();
    partition_from_seeds(g, &seeds)
}

/// Voronoi partition around the given seeds (see [`partition_bfs`]).
pub fn partition_from_seeds(g: &Graph, seeds: &[NodeId]) -> Result<Partition> {
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    seeds.dedup();
    let set = crate::schemes::LandmarkSet::new(g, seeds.iter().copied())?;
    let cluster_of = g
        .nodes()
        .map(|v| {
            let leader = set.nearest(v).0;
            seeds.binary_search(&leader).unwrap() as u32
        })
        .collect();
    Ok(Partition {
        cluster_of,
        leader_of: seeds,
    })
}

pub fn build_hier(g: &Graph, p: &Partition) -> Result<SchemeArtifacts> {
    g.ensure_connected()?;
    let n = g.node_count();
    if p.cluster_of.len() != n {
        return Err(Error::InvalidConfig("partition does not match graph".into()));
    }
    let mut tables: Vec<Vec<(NodeId, Port)>> = vec![Vec::new(); n];

    // intra-cluster entries: for each member v, ports toward v inside the cluster
    let mut dist = vec![UNREACHABLE; n];
    for v in g.nodes() {
        let c = p.cluster_of(v);
        let reached = p.restricted_bfs(g, v, &mut dist);
        for &w in &reached[1..] {
            let dw = dist[w as usize];
            let port = g
                .neighbors(w)
                .iter()
                .position(|&x| p.cluster_of(x) == c && dist[x as usize] == dw - 1)
                .expect("restricted bfs parent") as Port;
            tables[w as usize].push((v, port));
        }
        for w in reached {
            dist[w as usize] = UNREACHABLE;
        }
    }

    // one entry per foreign cluster, toward its leader along shortest paths in g
    let mut scratch = BfsScratch::new(n);
    for c in 0..p.cluster_count() as u32 {
        let leader = p.leader_of(c);
        scratch.run(g, leader, u32::MAX);
        for w in g.nodes() {
            if p.cluster_of(w) != c {
                let port = scratch.toward_source(g, w).expect("connected graph");
                tables[w as usize].push((leader, port));
            }
        }
    }

    let labels = g
        .nodes()
        .map(|v| {
            let c = p.cluster_of(v);
            Label::Cluster(ClusterLabel {
                node: v,
                cluster: c,
                leader: p.leader_of(c),
            })
        })
        .collect();
    Ok(SchemeArtifacts {
        kind: SchemeKind::Hierarchical,
        fingerprint: g.fingerprint(),
        node_count: n,
        tables: TableSet::Explicit(
            tables
                .into_iter()
                .enumerate()
                .map(|(w, e)| RoutingTable::new(w as NodeId, e))
                .collect(),
        ),
        labels,
        landmarks: None,
        partition: Some(p.clone()),
    })
}

pub(crate) fn decide(art: &SchemeArtifacts, current: NodeId, header: &PacketHeader) -> Result<Port> {
    let malformed = |m: String| Error::MalformedArtifacts(m);
    let Label::Cluster(dst) = *header.destination() else {
        return Err(malformed("hierarchical packet without a cluster label".into()));
    };
    let Label::Cluster(here) = *art.label(current) else {
        return Err(malformed(format!("node {current} has no cluster label")));
    };
    let key = if here.cluster == dst.cluster {
        dst.node
    } else {
        dst.leader
    };
    art.explicit_table(current)
        .and_then(|t| t.get(key))
        .ok_or_else(|| malformed(format!("node {current} has no entry for {key}")))
}

/// Route under the hierarchical decision rule.
pub fn route_hier(art: &SchemeArtifacts, g: &Graph, src: NodeId, dst: NodeId) -> Result<Vec<NodeId>> {
    if art.kind != SchemeKind::Hierarchical {
        return Err(Error::InvalidConfig(format!("expected hierarchical artifacts, got {}", art.kind)));
    }
    route(art, g, src, dst)
}
