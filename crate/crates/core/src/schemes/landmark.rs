use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Label, NodeLabel, RoutingTable, SchemeArtifacts, SchemeKind, TableSet};
use crate::error::{Error, Result};
use crate::graph::{BfsScratch, Graph, NodeId, Port, UNREACHABLE};

const CHUNK: usize = 256;

/// Landmark set `A` with each node's nearest landmark and its distance.
/// Equidistant landmarks resolve to the smallest id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LandmarkSet {
    members: Vec<NodeId>,
    nearest: Vec<(NodeId, u32)>,
}

impl LandmarkSet {
    pub fn new(g: &Graph, members: impl IntoIterator<Item = NodeId>) -> Result<Self> {
        let mut members: Vec<NodeId> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::LandmarkCoverage("landmark set is empty".into()));
        }
        if let Some(&bad) = members.iter().find(|&&v| v as usize >= g.node_count()) {
            return Err(Error::NodeOutOfRange {
                node: bad as u64,
                n: g.node_count(),
            });
        }
        let nearest = nearest_landmarks(g, &members);
        if let Some(v) = nearest.iter().position(|&(_, d)| d == UNREACHABLE) {
            return Err(Error::LandmarkCoverage(format!("node {v} cannot reach any landmark")));
        }
        Ok(LandmarkSet { members, nearest })
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// `(l(v), d(v, l(v)))`.
    pub fn nearest(&self, v: NodeId) -> (NodeId, u32) {
        self.nearest[v as usize]
    }

    pub fn node_count(&self) -> usize {
        self.nearest.len()
    }
}

/// Level-synchronous multi-source BFS. A node first reached at level `d+1`
/// takes the smallest nearest-landmark among its level-`d` neighbors, which
/// by induction is the smallest landmark at distance `d+1`.
fn nearest_landmarks(g: &Graph, members: &[NodeId]) -> Vec<(NodeId, u32)> {
    let mut nearest = vec![(NodeId::MAX, UNREACHABLE); g.node_count()];
    let mut frontier: Vec<NodeId> = members.to_vec();
    for &a in members {
        nearest[a as usize] = (a, 0);
    }
    let mut level = 0u32;
    let mut next = Vec::new();
    while !frontier.is_empty() {
        level += 1;
        next.clear();
        for &v in &frontier {
            let lv = nearest[v as usize].0;
            for &w in g.neighbors(v) {
                let slot = &mut nearest[w as usize];
                if slot.1 == UNREACHABLE {
                    *slot = (lv, level);
                    next.push(w);
                } else if slot.1 == level && lv < slot.0 {
                    slot.0 = lv;
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    nearest
}

/// Size of every cluster `C(w) = { v : d(w, v) < d(v, l(v)) }`, computed
/// through the dual bunches `{ w : d(w, v) < d(v, l(v)) }`.
pub fn cluster_sizes(g: &Graph, landmarks: &LandmarkSet) -> Vec<usize> {
    let n = g.node_count();
    let nodes: Vec<NodeId> = g.nodes().collect();
    let partial: Vec<Vec<NodeId>> = nodes
        .par_chunks(CHUNK)
        .map_init(
            || BfsScratch::new(n),
            |scratch, chunk| {
                let mut members = Vec::new();
                for &v in chunk {
                    let r = landmarks.nearest(v).1;
                    if r <= 1 {
                        continue;
                    }
                    members.extend(scratch.run(g, v, r - 1).iter().skip(1));
                }
                members
            },
        )
        .collect();
    let mut size = vec![0usize; n];
    for w in partial.into_iter().flatten() {
        size[w as usize] += 1;
    }
    size
}

struct Bunch {
    // (holder w, port at w toward v)
    entries: Vec<(NodeId, Port)>,
    egress: Option<Port>,
}

/// Tables and labels for a landmark scheme: every node stores a
/// shortest-path port to each landmark other than itself and to every member
/// of its cluster; node `v` is labeled `(v, l(v), egress)`.
pub fn build_landmark_scheme(
    g: &Graph,
    landmarks: &LandmarkSet,
    kind: SchemeKind,
) -> Result<SchemeArtifacts> {
    if !kind.is_stretch3() {
        return Err(Error::InvalidConfig(format!(
            "{kind} is not a landmark scheme"
        )));
    }
    g.ensure_connected()?;
    let n = g.node_count();
    if landmarks.node_count() != n {
        return Err(Error::LandmarkCoverage(format!(
            "landmark set covers {} nodes, graph has {n}",
            landmarks.node_count()
        )));
    }
    let mut tables: Vec<Vec<(NodeId, Port)>> = vec![Vec::new(); n];

    // landmark entries
    let members = landmarks.members();
    let ports: Vec<Vec<Port>> = members
        .par_chunks(16)
        .map_init(
            || BfsScratch::new(n),
            |scratch, chunk| {
                chunk
                    .iter()
                    .map(|&l| {
                        scratch.run(g, l, u32::MAX);
                        g.nodes()
                            .map(|w| scratch.toward_source(g, w).unwrap_or(UNREACHABLE))
                            .collect::<Vec<Port>>()
                    })
                    .collect::<Vec<_>>()
            },
        )
        .flatten()
        .collect();
    for (&l, row) in members.iter().zip(&ports) {
        for w in g.nodes() {
            if w != l {
                tables[w as usize].push((l, row[w as usize]));
            }
        }
    }
    drop(ports);

    // cluster entries and label egress ports
    let nodes: Vec<NodeId> = g.nodes().collect();
    let bunches: Vec<Bunch> = nodes
        .par_chunks(CHUNK)
        .map_init(
            || BfsScratch::new(n),
            |scratch, chunk| {
                chunk
                    .iter()
                    .map(|&v| bunch_of(g, landmarks, scratch, v))
                    .collect::<Vec<_>>()
            },
        )
        .flatten()
        .collect();

    let mut labels = Vec::with_capacity(n);
    for (v, b) in bunches.into_iter().enumerate() {
        let v = v as NodeId;
        for (w, port) in b.entries {
            tables[w as usize].push((v, port));
        }
        labels.push(Label::Landmark(NodeLabel {
            node: v,
            landmark: landmarks.nearest(v).0,
            landmark_egress: b.egress,
        }));
    }

    let tables = tables
        .into_iter()
        .enumerate()
        .map(|(w, e)| RoutingTable::new(w as NodeId, e))
        .collect();
    Ok(SchemeArtifacts {
        kind,
        fingerprint: g.fingerprint(),
        node_count: n,
        tables: TableSet::Explicit(tables),
        labels,
        landmarks: Some(landmarks.clone()),
        partition: None,
    })
}

fn bunch_of(g: &Graph, landmarks: &LandmarkSet, scratch: &mut BfsScratch, v: NodeId) -> Bunch {
    let (l, r) = landmarks.nearest(v);
    if r == 0 {
        return Bunch {
            entries: Vec::new(),
            egress: None,
        };
    }
    // all nodes within r - 1 hops of v hold v in their cluster
    let visited: Vec<NodeId> = scratch.run(g, v, r - 1).to_vec();
    let entries = visited[1..]
        .iter()
        .map(|&w| (w, scratch.toward_source(g, w).expect("visited node has a parent")))
        .collect();
    let egress = g
        .neighbors(l)
        .iter()
        .position(|&x| scratch.dist(x) == r - 1)
        .map(|p| p as Port);
    debug_assert!(egress.is_some());
    Bunch { entries, egress }
}
