use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::landmark::{build_landmark_scheme, LandmarkSet};
use super::{SchemeArtifacts, SchemeKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, UNREACHABLE};

/// Ball of every node: its `size` nearest nodes (itself included) in
/// (distance, id) order.
pub fn balls(g: &Graph, size: usize) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let size = size.clamp(1, n.max(1));
    let nodes: Vec<NodeId> = g.nodes().collect();
    nodes
        .par_chunks(256)
        .map_init(
            || vec![UNREACHABLE; n],
            |mark, chunk| {
                chunk
                    .iter()
                    .map(|&v| ball_of(g, v, size, mark))
                    .collect::<Vec<_>>()
            },
        )
        .flatten()
        .collect()
}

fn ball_of(g: &Graph, v: NodeId, size: usize, mark: &mut [u32]) -> Vec<NodeId> {
    let mut ball = vec![v];
    let mut touched = vec![v];
    mark[v as usize] = 0;
    let mut frontier = vec![v];
    while ball.len() < size && !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if mark[w as usize] == UNREACHABLE {
                    mark[w as usize] = 0;
                    touched.push(w);
                    next.push(w);
                }
            }
        }
        next.sort_unstable();
        let take = (size - ball.len()).min(next.len());
        ball.extend_from_slice(&next[..take]);
        frontier = next;
    }
    for w in touched {
        mark[w as usize] = UNREACHABLE;
    }
    ball
}

/// Greedy hitting set: repeatedly picks the node contained in the most
/// not-yet-hit balls (smallest id on ties) until every ball is hit.
pub fn greedy_ball_cover(n: usize, balls: &[Vec<NodeId>]) -> Vec<NodeId> {
    let mut containing: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (b, ball) in balls.iter().enumerate() {
        for &x in ball {
            containing[x as usize].push(b as u32);
        }
    }
    let mut count: Vec<usize> = containing.iter().map(Vec::len).collect();
    let mut heap: BinaryHeap<(usize, Reverse<NodeId>)> = (0..n)
        .filter(|&x| count[x] > 0)
        .map(|x| (count[x], Reverse(x as NodeId)))
        .collect();
    let mut hit = vec![false; balls.len()];
    let mut remaining = balls.len();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let Some((c, Reverse(x))) = heap.pop() else {
            break;
        };
        if c != count[x as usize] {
            // stale entry; counts only decrease
            if count[x as usize] > 0 {
                heap.push((count[x as usize], Reverse(x)));
            }
            continue;
        }
        if c == 0 {
            break;
        }
        chosen.push(x);
        for &b in &containing[x as usize] {
            if !hit[b as usize] {
                hit[b as usize] = true;
                remaining -= 1;
                for &y in &balls[b as usize] {
                    count[y as usize] -= 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Cowen-style scheme: landmarks form a greedy cover of the
/// `ceil(n^alpha)`-node balls, then the shared landmark table construction.
/// Construction is deterministic; `seed` is accepted for interface symmetry
/// with the other builders and does not influence the result.
pub fn build_cowen(g: &Graph, alpha: f64, seed: u64) -> Result<SchemeArtifacts> {
    let _ = seed;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidConfig(format!("alpha must be in (0, 1), got {alpha}")));
    }
    g.ensure_connected()?;
    let n = g.node_count();
    let size = ball_size(n, alpha);
    let b = balls(g, size);
    let members = greedy_ball_cover(n, &b);
    let landmarks = LandmarkSet::new(g, members)?;
    build_landmark_scheme(g, &landmarks, SchemeKind::Cowen)
}

/// `ceil(n^alpha)`, tolerant of floating-point noise just above an integer.
pub(crate) fn ball_size(n: usize, alpha: f64) -> usize {
    let x = (n as f64).powf(alpha);
    ((x - 1e-9).ceil() as usize).clamp(1, n.max(1))
}
