use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs, multi_bfs, Fingerprint, Graph, NodeId, PairMode, LANES};
use crate::rng;
use crate::schemes::{route_len, DestinationDistances, SchemeArtifacts, SchemeKind};

/// Labels of the stretch histogram buckets: eight half-open buckets of
/// width 0.25 covering [1, 3), then stretch exactly 3, then above 3.
pub const STRETCH_BUCKETS: [&str; 10] = [
    "1.00-1.25",
    "1.25-1.50",
    "1.50-1.75",
    "1.75-2.00",
    "2.00-2.25",
    "2.25-2.50",
    "2.50-2.75",
    "2.75-3.00",
    "3.00",
    "gt3",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub kind: SchemeKind,
    pub fingerprint: Fingerprint,
    pub pair_count: u64,
    pub mode: PairMode,
    pub avg_stretch: f64,
    pub max_stretch: f64,
    /// Counts per [`STRETCH_BUCKETS`] entry.
    pub stretch_histogram: Vec<u64>,
    pub adjacent_pairs: u64,
    pub avg_stretch_len1: f64,
    pub frac_shortest: f64,
}

/// Order-independent accumulator over (routed, shortest) pairs. Stretch sums
/// are kept as integer length sums per shortest distance so that merging in
/// any order yields bit-identical averages.
#[derive(Clone, Debug, Default)]
pub(crate) struct Accumulator {
    pairs: u64,
    routed_by_dist: Vec<u64>,
    pairs_by_dist: Vec<u64>,
    max: Option<(u32, u32)>,
    histogram: [u64; 10],
    shortest: u64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, routed: u32, shortest: u32) {
        debug_assert!(shortest > 0 && routed >= shortest);
        let d = shortest as usize;
        if self.routed_by_dist.len() <= d {
            self.routed_by_dist.resize(d + 1, 0);
            self.pairs_by_dist.resize(d + 1, 0);
        }
        self.pairs += 1;
        self.routed_by_dist[d] += routed as u64;
        self.pairs_by_dist[d] += 1;
        if routed == shortest {
            self.shortest += 1;
        }
        let bigger = match self.max {
            None => true,
            Some((r, s)) => routed as u64 * s as u64 > r as u64 * shortest as u64,
        };
        if bigger {
            self.max = Some((routed, shortest));
        }
        self.histogram[bucket(routed, shortest)] += 1;
    }

    pub(crate) fn merge(&mut self, other: &Accumulator) {
        if self.routed_by_dist.len() < other.routed_by_dist.len() {
            self.routed_by_dist.resize(other.routed_by_dist.len(), 0);
            self.pairs_by_dist.resize(other.routed_by_dist.len(), 0);
        }
        for (d, (&r, &p)) in other.routed_by_dist.iter().zip(&other.pairs_by_dist).enumerate() {
            self.routed_by_dist[d] += r;
            self.pairs_by_dist[d] += p;
        }
        self.pairs += other.pairs;
        self.shortest += other.shortest;
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        if let Some((r, s)) = other.max {
            let bigger = match self.max {
                None => true,
                Some((r0, s0)) => r as u64 * s0 as u64 > r0 as u64 * s as u64,
            };
            if bigger {
                self.max = Some((r, s));
            }
        }
    }

    pub(crate) fn avg(&self) -> f64 {
        if self.pairs == 0 {
            return 1.0;
        }
        let sum: f64 = self
            .routed_by_dist
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, &r)| r as f64 / d as f64)
            .sum();
        sum / self.pairs as f64
    }

    pub(crate) fn max(&self) -> f64 {
        self.max.map_or(1.0, |(r, s)| r as f64 / s as f64)
    }
}

fn bucket(routed: u32, shortest: u32) -> usize {
    let (r, s) = (routed as u64, shortest as u64);
    if r > 3 * s {
        9
    } else if r == 3 * s {
        8
    } else {
        (4 * (r - s) / s) as usize
    }
}

/// Outcome of routing one ordered pair.
#[derive(Clone, Copy, Debug)]
struct Measured {
    src: NodeId,
    dst: NodeId,
    routed: u32,
    shortest: u32,
}

fn check_bound(kind: SchemeKind, m: Measured) -> Result<()> {
    if kind.is_stretch3() && m.routed > 3 * m.shortest {
        return Err(Error::StretchBound {
            kind: kind.to_string(),
            src: m.src,
            dst: m.dst,
            routed: m.routed,
            shortest: m.shortest,
        });
    }
    Ok(())
}

/// Average, maximum and distribution of routed-length / shortest-length.
///
/// All `n(n-1)` ordered pairs are routed when that fits in `pair_budget`;
/// otherwise `pair_budget` distinct ordered pairs are drawn uniformly with
/// `seed`. Every ordered adjacent pair is routed in addition to fill
/// `avg_stretch_len1`. For Cowen and TZ artifacts a pair routed at stretch
/// above 3 aborts the measurement with [`Error::StretchBound`].
pub fn measure_stretch(
    art: &SchemeArtifacts,
    g: &Graph,
    pair_budget: u64,
    seed: u64,
) -> Result<StretchReport> {
    art.check_graph(g)?;
    let n = g.node_count();
    let ordered = n as u64 * n.saturating_sub(1) as u64;
    let (mode, acc) = if ordered <= pair_budget {
        (PairMode::Exact, exact_pairs(art, g)?)
    } else {
        let pairs = sample_ordered_pairs(n, pair_budget as usize, seed);
        (PairMode::Sampled { seed }, sampled_pairs(art, g, &pairs)?)
    };
    let len1 = adjacent_accumulator(art, g)?;
    Ok(StretchReport {
        kind: art.kind,
        fingerprint: art.fingerprint.clone(),
        pair_count: acc.pairs,
        mode,
        avg_stretch: acc.avg(),
        max_stretch: acc.max(),
        stretch_histogram: acc.histogram.to_vec(),
        adjacent_pairs: len1.pairs,
        avg_stretch_len1: len1.avg(),
        frac_shortest: if acc.pairs == 0 {
            1.0
        } else {
            acc.shortest as f64 / acc.pairs as f64
        },
    })
}

fn exact_pairs(art: &SchemeArtifacts, g: &Graph) -> Result<Accumulator> {
    let dests: Vec<NodeId> = g.nodes().collect();
    let parts: Vec<Result<Accumulator>> = dests
        .par_chunks(16)
        .map(|chunk| {
            let mut acc = Accumulator::default();
            for &t in chunk {
                let tree = bfs(g, t);
                let row = tree.distances();
                for u in g.nodes().filter(|&u| u != t) {
                    let routed = route_len(art, g, u, t, DestinationDistances::Row(row))?;
                    let m = Measured {
                        src: u,
                        dst: t,
                        routed,
                        shortest: row[u as usize],
                    };
                    check_bound(art.kind, m)?;
                    acc.add(routed, m.shortest);
                }
            }
            Ok(acc)
        })
        .collect();
    merge_all(parts)
}

fn sampled_pairs(art: &SchemeArtifacts, g: &Graph, pairs: &[(NodeId, NodeId)]) -> Result<Accumulator> {
    // group by destination so one distance lane serves every pair ending there
    let mut by_dst: Vec<(NodeId, NodeId)> = pairs.iter().map(|&(u, v)| (v, u)).collect();
    by_dst.sort_unstable();
    let mut dests: Vec<NodeId> = by_dst.iter().map(|&(t, _)| t).collect();
    dests.dedup();
    let batches: Vec<&[NodeId]> = dests.chunks(LANES).collect();
    let parts: Vec<Result<Accumulator>> = batches
        .par_iter()
        .map(|batch| {
            let block = multi_bfs(g, batch);
            let mut acc = Accumulator::default();
            for (lane, &t) in batch.iter().enumerate() {
                let lo = by_dst.partition_point(|&(x, _)| x < t);
                let hi = by_dst.partition_point(|&(x, _)| x <= t);
                for &(_, u) in &by_dst[lo..hi] {
                    let dists = DestinationDistances::Block(&block, lane);
                    let routed = route_len(art, g, u, t, dists)?;
                    let m = Measured {
                        src: u,
                        dst: t,
                        routed,
                        shortest: block.dist(lane, u),
                    };
                    check_bound(art.kind, m)?;
                    acc.add(routed, m.shortest);
                }
            }
            Ok(acc)
        })
        .collect();
    merge_all(parts)
}

fn merge_all(parts: Vec<Result<Accumulator>>) -> Result<Accumulator> {
    let mut acc = Accumulator::default();
    for p in parts {
        acc.merge(&p?);
    }
    Ok(acc)
}

/// Routed length of every ordered adjacent pair `(u, v)`, ordered by `u`
/// then by port.
pub(crate) fn adjacent_route_lengths(art: &SchemeArtifacts, g: &Graph) -> Result<Vec<(NodeId, NodeId, u32)>> {
    let sources: Vec<NodeId> = g.nodes().collect();
    let parts: Vec<Result<Vec<(NodeId, NodeId, u32)>>> = sources
        .par_chunks(64)
        .map(|chunk| {
            let mut out = Vec::new();
            for &u in chunk {
                for &v in g.neighbors(u) {
                    let routed = route_len(art, g, u, v, DestinationDistances::Unknown)?;
                    check_bound(
                        art.kind,
                        Measured {
                            src: u,
                            dst: v,
                            routed,
                            shortest: 1,
                        },
                    )?;
                    out.push((u, v, routed));
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::with_capacity(2 * g.edge_count());
    for p in parts {
        all.extend(p?);
    }
    Ok(all)
}

fn adjacent_accumulator(art: &SchemeArtifacts, g: &Graph) -> Result<Accumulator> {
    let mut acc = Accumulator::default();
    for (_, _, routed) in adjacent_route_lengths(art, g)? {
        acc.add(routed, 1);
    }
    Ok(acc)
}

/// `k` distinct ordered pairs `(u, v)`, `u != v`, drawn uniformly from all
/// `n(n-1)`, in ascending order of their index `u * (n-1) + rank(v)`.
pub(crate) fn sample_ordered_pairs(n: usize, k: usize, seed: u64) -> Vec<(NodeId, NodeId)> {
    if n < 2 {
        return Vec::new();
    }
    let total = n * (n - 1);
    let mut rng = rng::stream(seed);
    let mut idx = rand::seq::index::sample(&mut rng, total, k.min(total)).into_vec();
    idx.sort_unstable();
    idx.into_iter()
        .map(|i| {
            let u = i / (n - 1);
            let r = i % (n - 1);
            let v = if r >= u { r + 1 } else { r };
            (u as NodeId, v as NodeId)
        })
        .collect()
}
