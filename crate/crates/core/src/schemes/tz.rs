use rand::Rng;

use super::landmark::{build_landmark_scheme, cluster_sizes, LandmarkSet};
use super::{SchemeArtifacts, SchemeKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;

/// Iterative landmark sampling that bounds every cluster by `cap * n / s`.
///
/// Starting from `W = V`, each round adds every node of `W` to the landmark
/// set independently with probability `min(1, s / |W|)`, recomputes the
/// clusters and keeps in `W` only the nodes whose cluster is still larger
/// than `cap * n / s`. Nodes of `W` are visited in ascending id order, one
/// Bernoulli draw each, from a `ChaCha8` stream seeded with `seed`.
pub fn select_landmarks(g: &Graph, s: usize, cap: f64, seed: u64) -> Result<LandmarkSet> {
    let n = g.node_count();
    if s == 0 || s > n {
        return Err(Error::InvalidConfig(format!("s must be in [1, {n}], got {s}")));
    }
    if !(cap > 0.0) || !cap.is_finite() {
        return Err(Error::InvalidConfig(format!("cap must be > 0, got {cap}")));
    }
    g.ensure_connected()?;
    let limit = cap * n as f64 / s as f64;
    let mut rng = rng::stream(seed);
    let mut chosen = vec![false; n];
    let mut members: Vec<NodeId> = Vec::new();
    let mut pending: Vec<NodeId> = g.nodes().collect();
    loop {
        let p = (s as f64 / pending.len() as f64).min(1.0);
        for &w in &pending {
            if rng.gen_bool(p) && !chosen[w as usize] {
                chosen[w as usize] = true;
                members.push(w);
            }
        }
        if members.is_empty() {
            continue;
        }
        let set = LandmarkSet::new(g, members.iter().copied())?;
        let sizes = cluster_sizes(g, &set);
        pending = g
            .nodes()
            .filter(|&w| sizes[w as usize] as f64 > limit)
            .collect();
        if pending.is_empty() {
            return Ok(set);
        }
    }
}

/// TZ-style scheme: [`select_landmarks`] followed by the shared landmark
/// table construction.
pub fn build_tz(g: &Graph, s: usize, cap: f64, seed: u64) -> Result<SchemeArtifacts> {
    let landmarks = select_landmarks(g, s, cap, seed)?;
    build_landmark_scheme(g, &landmarks, SchemeKind::Tz)
}
