use serde::{Deserialize, Serialize};

use super::{Graph, NodeId, Port};

/// Marker for "no distance" / "no port".
pub const UNREACHABLE: u32 = u32::MAX;

/// Hop distances from a root plus, for every reached node, the port at that
/// node leading one hop toward the root.
///
/// Among several neighbors one hop closer to the root, the parent port
/// selects the one with the smallest node id. Because ports are ordered by
/// neighbor id this is the first qualifying port.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfsTree {
    pub root: NodeId,
    dist: Vec<u32>,
    parent_port: Vec<u32>,
}

impl BfsTree {
    pub fn dist(&self, v: NodeId) -> Option<u32> {
        match self.dist[v as usize] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    pub fn parent_port(&self, v: NodeId) -> Option<Port> {
        match self.parent_port[v as usize] {
            UNREACHABLE => None,
            p => Some(p),
        }
    }

    pub fn parent(&self, g: &Graph, v: NodeId) -> Option<NodeId> {
        self.parent_port(v).and_then(|p| g.neighbor_at(v, p))
    }
}

pub fn bfs(g: &Graph, src: NodeId) -> BfsTree {
    let mut scratch = BfsScratch::new(g.node_count());
    scratch.run(g, src, u32::MAX);
    let dist = scratch.dist.clone();
    let parent_port = g
        .nodes()
        .map(|v| toward_root_port(g, &dist, v).unwrap_or(UNREACHABLE))
        .collect();
    BfsTree {
        root: src,
        dist,
        parent_port,
    }
}

/// First port at `v` whose neighbor is one hop closer to the root of `dist`.
#[inline]
pub(crate) fn toward_root_port(g: &Graph, dist: &[u32], v: NodeId) -> Option<Port> {
    let d = dist[v as usize];
    if d == 0 || d == UNREACHABLE {
        return None;
    }
    g.neighbors(v)
        .iter()
        .position(|&u| dist[u as usize] == d - 1)
        .map(|p| p as Port)
}

/// Reusable BFS state for running many (possibly depth-limited) searches
/// without reallocating per search.
#[derive(Clone, Debug)]
pub struct BfsScratch {
    dist: Vec<u32>,
    order: Vec<NodeId>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![UNREACHABLE; n],
            order: Vec::new(),
        }
    }

    /// Runs BFS from `src` visiting nodes at distance `<= max_depth`.
    /// Returns the visited nodes in BFS order (ascending distance).
    pub fn run(&mut self, g: &Graph, src: NodeId, max_depth: u32) -> &[NodeId] {
        for &v in &self.order {
            self.dist[v as usize] = UNREACHABLE;
        }
        self.order.clear();
        self.dist[src as usize] = 0;
        self.order.push(src);
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            let du = self.dist[u as usize];
            if du >= max_depth {
                continue;
            }
            for &w in g.neighbors(u) {
                if self.dist[w as usize] == UNREACHABLE {
                    self.dist[w as usize] = du + 1;
                    self.order.push(w);
                }
            }
        }
        &self.order
    }

    /// Distance from the last search's source, `UNREACHABLE` when not visited.
    #[inline]
    pub fn dist(&self, v: NodeId) -> u32 {
        self.dist[v as usize]
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    pub fn visited(&self) -> &[NodeId] {
        &self.order
    }

    /// Port at `v` one hop closer to the last search's source. Valid for any
    /// visited `v` since all of its closer neighbors were visited too.
    #[inline]
    pub fn toward_source(&self, g: &Graph, v: NodeId) -> Option<Port> {
        toward_root_port(g, &self.dist, v)
    }
}
