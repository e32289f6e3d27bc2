//! Immutable undirected graphs with port-numbered adjacency.
//!
//! Nodes are dense `u32` ids `0..n`. The adjacency of every node is stored
//! sorted by neighbor id, and the port of a neighbor is its position in that
//! list, so port `p` at node `v` is `neighbors(v)[p]`. Each graph remembers
//! the original identifier (AS number, file id) of every dense node.

mod bfs;
mod msbfs;
mod stats;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use bfs::{bfs, BfsScratch, BfsTree, UNREACHABLE};
pub use msbfs::{multi_bfs, DistanceBlock, LANES};
pub use stats::{clustering_coefficients, degree_ccdf_slope, fit_loglog_slope, stats, GraphStats, PairMode};

pub type NodeId = u32;
pub type Port = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    original_ids: Vec<u64>,
}

/// Identity of a graph used to check that reports were measured on the same
/// topology: node count, edge count and SHA-256 of the sorted dense edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub n: usize,
    pub m: usize,
    pub edges_sha256: String,
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} m={} sha256={}", self.n, self.m, &self.edges_sha256[..16])
    }
}

impl Graph {
    /// Builds a graph from a list of edges over arbitrary non-negative ids.
    ///
    /// Ids are re-indexed densely in first-seen order. Duplicate edges (in
    /// either orientation) and self-loops are rejected; the error carries the
    /// 1-based position of the offending pair.
    pub fn from_edges(edges: &[(u64, u64)]) -> Result<Graph> {
        Self::from_numbered_edges(edges.iter().enumerate().map(|(i, &(u, v))| (i + 1, u, v)))
    }

    /// Like [`Graph::from_edges`] but with explicit line numbers for error
    /// reporting.
    pub fn from_numbered_edges(
        edges: impl IntoIterator<Item = (usize, u64, u64)>,
    ) -> Result<Graph> {
        let mut index: HashMap<u64, NodeId> = HashMap::new();
        let mut original_ids = Vec::new();
        let mut dense = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (line, u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { line, node: u });
            }
            let mut id = |x: u64| {
                *index.entry(x).or_insert_with(|| {
                    original_ids.push(x);
                    (original_ids.len() - 1) as NodeId
                })
            };
            let (a, b) = (id(u), id(v));
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicateEdge { line, u, v });
            }
            dense.push((a, b));
        }
        Ok(Self::assemble(original_ids, &dense))
    }

    /// Builds a graph on nodes `0..n` (original ids equal to dense ids),
    /// silently dropping self-loops and merging duplicate edges.
    pub fn from_dense_edges_lenient(n: usize, edges: &[(NodeId, NodeId)]) -> Graph {
        let mut clean: Vec<(NodeId, NodeId)> = edges
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        clean.sort_unstable();
        clean.dedup();
        Self::assemble((0..n as u64).collect(), &clean)
    }

    /// Builds a graph over arbitrary ids, merging duplicate edges and
    /// dropping self-loops. Ids are re-indexed in first-seen order.
    pub fn from_edges_merged(edges: &[(u64, u64)]) -> Graph {
        let mut index: HashMap<u64, NodeId> = HashMap::new();
        let mut original_ids = Vec::new();
        let mut dense = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                continue;
            }
            let mut id = |x: u64| {
                *index.entry(x).or_insert_with(|| {
                    original_ids.push(x);
                    (original_ids.len() - 1) as NodeId
                })
            };
            let (a, b) = (id(u), id(v));
            dense.push((a.min(b), a.max(b)));
        }
        dense.sort_unstable();
        dense.dedup();
        Self::assemble(original_ids, &dense)
    }

    fn assemble(original_ids: Vec<u64>, edges: &[(NodeId, NodeId)]) -> Graph {
        let n = original_ids.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets,
            targets,
            original_ids,
        }
    }

    pub fn node_count(&self) -> usize {
        self.original_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        self.nodes().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbors of `v` in port order (ascending id).
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbor_at(&self, v: NodeId, port: Port) -> Option<NodeId> {
        self.neighbors(v).get(port as usize).copied()
    }

    /// Port at `v` leading to `u`, if they are adjacent.
    pub fn port_to(&self, v: NodeId, u: NodeId) -> Option<Port> {
        self.neighbors(v).binary_search(&u).ok().map(|p| p as Port)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.port_to(u, v).is_some()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        0..self.node_count() as NodeId
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    pub fn original_id(&self, v: NodeId) -> u64 {
        self.original_ids[v as usize]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Map from original id to dense id.
    pub fn id_index(&self) -> HashMap<u64, NodeId> {
        self.original_ids
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, i as NodeId))
            .collect()
    }

    pub fn check_node(&self, v: u64) -> Result<NodeId> {
        if (v as usize) < self.node_count() {
            Ok(v as NodeId)
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                n: self.node_count(),
            })
        }
    }

    /// Component id of every node, numbered in order of smallest dense id.
    pub fn components(&self) -> (Vec<u32>, usize) {
        let n = self.node_count();
        let mut comp = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s as NodeId);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if comp[w as usize] == u32::MAX {
                        comp[w as usize] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.components().1 == 1
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.node_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        let (_, k) = self.components();
        if k == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected { components: k })
        }
    }

    /// Largest connected component, re-indexed densely in ascending order of
    /// the current dense ids. Equal-size components are ranked by their
    /// smallest original id.
    pub fn giant_component(&self) -> Result<Graph> {
        let n = self.node_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let (comp, k) = self.components();
        let mut size = vec![0usize; k];
        let mut min_orig = vec![u64::MAX; k];
        for v in 0..n {
            let c = comp[v] as usize;
            size[c] += 1;
            min_orig[c] = min_orig[c].min(self.original_ids[v]);
        }
        let best = (0..k)
            .min_by_key(|&c| (std::cmp::Reverse(size[c]), min_orig[c]))
            .unwrap() as u32;
        if k == 1 {
            return Ok(self.clone());
        }
        let keep: Vec<bool> = comp.iter().map(|&c| c == best).collect();
        Ok(self.induced(&keep))
    }

    /// Subgraph induced by the nodes with `keep[v]`, re-indexed in ascending
    /// dense-id order.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let mut remap = vec![NodeId::MAX; self.node_count()];
        let mut original_ids = Vec::new();
        for v in self.nodes() {
            if keep[v as usize] {
                remap[v as usize] = original_ids.len() as NodeId;
                original_ids.push(self.original_id(v));
            }
        }
        let edges: Vec<(NodeId, NodeId)> = self
            .edges()
            .filter(|&(u, v)| keep[u as usize] && keep[v as usize])
            .map(|(u, v)| (remap[u as usize], remap[v as usize]))
            .collect();
        Self::assemble(original_ids, &edges)
    }

    /// Fraction of nodes with degree at least `k`, for `k = 1..=max_degree`.
    pub fn degree_ccdf(&self) -> Vec<(usize, f64)> {
        let n = self.node_count();
        let max = self.max_degree();
        let mut count = vec![0usize; max + 2];
        for v in self.nodes() {
            count[self.degree(v)] += 1;
        }
        let mut at_least = vec![0usize; max + 2];
        for k in (0..=max).rev() {
            at_least[k] = at_least[k + 1] + count[k];
        }
        (1..=max)
            .map(|k| (k, at_least[k] as f64 / n as f64))
            .collect()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut h = Sha256::new();
        for (u, v) in self.edges() {
            h.update(u.to_le_bytes());
            h.update(v.to_le_bytes());
        }
        let digest = h.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Fingerprint {
            n: self.node_count(),
            m: self.edge_count(),
            edges_sha256: hex,
        }
    }

    /// Same graph with dense ids permuted: node `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[NodeId]) -> Graph {
        let mut original_ids = vec![0; self.node_count()];
        for v in self.nodes() {
            original_ids[perm[v as usize] as usize] = self.original_id(v);
        }
        let edges: Vec<(NodeId, NodeId)> = self
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Self::assemble(original_ids, &edges)
    }
}
