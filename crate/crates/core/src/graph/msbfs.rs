//! Bit-parallel breadth-first search from up to 64 sources at once.
//!
//! Each node carries a 64-bit mask of the sources that have reached it; one
//! sweep over the adjacency per level advances all searches together. Only
//! distances are produced; use [`super::bfs`] when parent ports are needed.

use super::{Graph, NodeId, UNREACHABLE};

pub const LANES: usize = 64;

/// Distances from a batch of sources to every node.
#[derive(Clone, Debug)]
pub struct DistanceBlock {
    sources: Vec<NodeId>,
    // node-major: dist[v * LANES + lane]
    dist: Vec<u32>,
}

impl DistanceBlock {
    pub fn sources(&self) -> &[NodeId] {
        &self.sources
    }

    /// Distance from `sources()[lane]` to `v`.
    #[inline]
    pub fn dist(&self, lane: usize, v: NodeId) -> u32 {
        self.dist[v as usize * LANES + lane]
    }
}

/// Runs BFS from every source in `sources` (at most [`LANES`]).
pub fn multi_bfs(g: &Graph, sources: &[NodeId]) -> DistanceBlock {
    assert!(sources.len() <= LANES, "at most {LANES} sources per batch");
    let n = g.node_count();
    let mut dist = vec![UNREACHABLE; n * LANES];
    let mut seen = vec![0u64; n];
    let mut frontier = vec![0u64; n];
    let mut next = vec![0u64; n];
    for (lane, &s) in sources.iter().enumerate() {
        let bit = 1u64 << lane;
        seen[s as usize] |= bit;
        frontier[s as usize] |= bit;
        dist[s as usize * LANES + lane] = 0;
    }
    let full = if sources.len() == LANES {
        u64::MAX
    } else {
        (1u64 << sources.len()) - 1
    };
    let mut level = 0u32;
    loop {
        level += 1;
        let mut any = false;
        for v in 0..n {
            if seen[v] == full {
                next[v] = 0;
                continue;
            }
            let mut acc = 0u64;
            for &u in g.neighbors(v as NodeId) {
                acc |= frontier[u as usize];
            }
            let fresh = acc & !seen[v];
            next[v] = fresh;
            if fresh != 0 {
                any = true;
                seen[v] |= fresh;
                let mut bits = fresh;
                while bits != 0 {
                    let lane = bits.trailing_zeros() as usize;
                    dist[v * LANES + lane] = level;
                    bits &= bits - 1;
                }
            }
        }
        if !any {
            break;
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    DistanceBlock {
        sources: sources.to_vec(),
        dist,
    }
}
