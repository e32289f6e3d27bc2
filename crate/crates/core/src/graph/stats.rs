use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::msbfs::{multi_bfs, LANES};
use super::{Graph, NodeId};
use crate::error::{Error, Result};
use crate::rng;

/// How a set of node pairs was chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum PairMode {
    Exact,
    Sampled { seed: u64 },
}

impl PairMode {
    pub fn label(&self) -> &'static str {
        match self {
            PairMode::Exact => "exact",
            PairMode::Sampled { .. } => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub pair_mode: PairMode,
    pub pair_count: u64,
    pub avg_distance: f64,
    /// `distance_histogram[h]` = number of evaluated pairs at `h` hops.
    pub distance_histogram: Vec<u64>,
    pub pct_2_to_4: f64,
    pub clustering: f64,
}

/// Topology statistics over unordered node pairs.
///
/// When `n(n-1)/2 <= pair_budget` every pair is evaluated; otherwise
/// `pair_budget` distinct unordered pairs are drawn uniformly with the given
/// seed. The clustering coefficient is always exact.
pub fn stats(g: &Graph, pair_budget: u64, seed: u64) -> Result<GraphStats> {
    if pair_budget == 0 {
        return Err(Error::InvalidConfig("pair_budget must be >= 1".into()));
    }
    g.ensure_connected()?;
    let n = g.node_count();
    let total = (n as u64) * (n as u64).saturating_sub(1) / 2;

    let (pair_mode, groups) = if total <= pair_budget {
        let groups: Vec<(NodeId, Vec<NodeId>)> = g
            .nodes()
            .map(|u| (u, (u + 1..n as NodeId).collect()))
            .filter(|(_, vs): &(NodeId, Vec<NodeId>)| !vs.is_empty())
            .collect();
        (PairMode::Exact, groups)
    } else {
        let pairs = sample_unordered_pairs(n, pair_budget as usize, seed);
        (PairMode::Sampled { seed }, group_by_first(pairs))
    };

    let histogram = distance_histogram(g, &groups);
    let pair_count: u64 = histogram.iter().sum();
    let dist_sum: u64 = histogram
        .iter()
        .enumerate()
        .map(|(h, &c)| h as u64 * c)
        .sum();
    let within = |lo: usize, hi: usize| -> u64 {
        histogram
            .iter()
            .enumerate()
            .filter(|(h, _)| (lo..=hi).contains(h))
            .map(|(_, &c)| c)
            .sum()
    };
    let ratio = |a: u64| if pair_count == 0 { 0.0 } else { a as f64 / pair_count as f64 };
    let pct_2_to_4 = ratio(within(2, 4));

    let cc = clustering_coefficients(g);
    let clustering = if n == 0 {
        0.0
    } else {
        cc.iter().sum::<f64>() / n as f64
    };

    Ok(GraphStats {
        n,
        m: g.edge_count(),
        avg_degree: 2.0 * g.edge_count() as f64 / n as f64,
        max_degree: g.max_degree(),
        pair_mode,
        pair_count,
        avg_distance: ratio(dist_sum),
        distance_histogram: histogram,
        pct_2_to_4,
        clustering,
    })
}

/// `k` distinct unordered pairs `(i, j)`, `i < j`, drawn uniformly from all
/// `n(n-1)/2`, returned in ascending order.
pub(crate) fn sample_unordered_pairs(n: usize, k: usize, seed: u64) -> Vec<(NodeId, NodeId)> {
    let total = n * (n - 1) / 2;
    let mut rng = rng::stream(seed);
    let mut idx = rand::seq::index::sample(&mut rng, total, k.min(total)).into_vec();
    idx.sort_unstable();
    // pairs with first endpoint i occupy [row_start(i), row_start(i+1))
    let row_start = |i: usize| i * n - i * (i + 1) / 2;
    let mut out = Vec::with_capacity(idx.len());
    let mut i = 0usize;
    for k in idx {
        while row_start(i + 1) <= k {
            i += 1;
        }
        let j = i + 1 + (k - row_start(i));
        out.push((i as NodeId, j as NodeId));
    }
    out
}

fn group_by_first(pairs: Vec<(NodeId, NodeId)>) -> Vec<(NodeId, Vec<NodeId>)> {
    let mut groups: Vec<(NodeId, Vec<NodeId>)> = Vec::new();
    for (u, v) in pairs {
        match groups.last_mut() {
            Some((g, vs)) if *g == u => vs.push(v),
            _ => groups.push((u, vec![v])),
        }
    }
    groups
}

fn distance_histogram(g: &Graph, groups: &[(NodeId, Vec<NodeId>)]) -> Vec<u64> {
    let partial: Vec<Vec<u64>> = groups
        .par_chunks(LANES)
        .map(|batch| {
            let sources: Vec<NodeId> = batch.iter().map(|(s, _)| *s).collect();
            let block = multi_bfs(g, &sources);
            let mut h = Vec::new();
            for (lane, (_, targets)) in batch.iter().enumerate() {
                for &t in targets {
                    let d = block.dist(lane, t) as usize;
                    if h.len() <= d {
                        h.resize(d + 1, 0);
                    }
                    h[d] += 1;
                }
            }
            h
        })
        .collect();
    let mut out: Vec<u64> = Vec::new();
    for h in partial {
        if out.len() < h.len() {
            out.resize(h.len(), 0);
        }
        for (d, c) in h.into_iter().enumerate() {
            out[d] += c;
        }
    }
    out
}

/// Local clustering coefficient of every node; nodes of degree < 2 get 0.
pub fn clustering_coefficients(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    // orient each edge toward the endpoint of higher (degree, id) rank
    let rank_less = |a: NodeId, b: NodeId| (g.degree(a), a) < (g.degree(b), b);
    let out: Vec<Vec<NodeId>> = g
        .nodes()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| rank_less(v, u))
                .collect()
        })
        .collect();
    let mut triangles = vec![0u64; n];
    let mut mark = vec![false; n];
    for v in 0..n {
        for &u in &out[v] {
            mark[u as usize] = true;
        }
        for &u in &out[v] {
            for &w in &out[u as usize] {
                if mark[w as usize] {
                    triangles[v] += 1;
                    triangles[u as usize] += 1;
                    triangles[w as usize] += 1;
                }
            }
        }
        for &u in &out[v] {
            mark[u as usize] = false;
        }
    }
    g.nodes()
        .map(|v| {
            let d = g.degree(v) as f64;
            if d < 2.0 {
                0.0
            } else {
                2.0 * triangles[v as usize] as f64 / (d * (d - 1.0))
            }
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    for &(x, y) in points {
        if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
            return Err(Error::NonPositivePoint { x, y });
        }
    }
    let k = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidConfig(
            "log-log fit needs at least two distinct x values".into(),
        ));
    }
    Ok(sxy / sxx)
}

/// Log-log slope of the degree CCDF, fitted over the degrees that occur in
/// `g` (plateaus between realized degrees carry no extra information).
pub fn degree_ccdf_slope(g: &Graph) -> Result<f64> {
    let mut present = vec![false; g.max_degree() + 1];
    for v in g.nodes() {
        present[g.degree(v)] = true;
    }
    let points: Vec<(f64, f64)> = g
        .degree_ccdf()
        .into_iter()
        .filter(|&(k, _)| present[k])
        .map(|(k, f)| (k as f64, f))
        .collect();
    fit_loglog_slope(&points)
}
