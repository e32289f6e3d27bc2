//! Brute-force reference computations over Floyd-Warshall distances.

use croute::eval::StretchReport;
use croute::graph::NodeId;
use croute::schemes::{Label, SchemeArtifacts, SchemeKind};
use croute::Graph;

use super::{floyd_warshall, oracle_port, INF};

/// Reference routing state for one artifact set.
pub struct Oracle<'a> {
    pub g: &'a Graph,
    pub art: &'a SchemeArtifacts,
    pub d: Vec<Vec<u32>>,
}

impl<'a> Oracle<'a> {
    pub fn new(g: &'a Graph, art: &'a SchemeArtifacts) -> Self {
        Oracle {
            g,
            art,
            d: floyd_warshall(g),
        }
    }

    fn dist(&self, u: NodeId, v: NodeId) -> u32 {
        self.d[u as usize][v as usize]
    }

    /// Nearest landmark by (distance, id).
    fn nearest(&self, v: NodeId, members: &[NodeId]) -> NodeId {
        *members.iter().min_by_key(|&&a| (self.dist(v, a), a)).unwrap()
    }

    /// Checks every table entry and label against its definition.
    pub fn check_artifacts(&self) -> Result<(), String> {
        let g = self.g;
        let n = g.node_count() as NodeId;
        match self.art.kind {
            SchemeKind::Trivial => {
                for w in 0..n {
                    let want: Vec<(NodeId, u32)> = (0..n)
                        .filter(|&t| t != w)
                        .map(|t| (t, oracle_port(g, &self.d, w, t)))
                        .collect();
                    if self.art.table(g, w).entries() != want.as_slice() {
                        return Err(format!("trivial table of {w}"));
                    }
                }
            }
            SchemeKind::Cowen | SchemeKind::Tz => {
                let members = self.art.landmarks().unwrap().members().to_vec();
                let near: Vec<NodeId> = (0..n).map(|v| self.nearest(v, &members)).collect();
                for w in 0..n {
                    let want: Vec<(NodeId, u32)> = (0..n)
                        .filter(|&v| v != w)
                        .filter(|&v| {
                            members.contains(&v) || self.dist(w, v) < self.dist(v, near[v as usize])
                        })
                        .map(|v| (v, oracle_port(g, &self.d, w, v)))
                        .collect();
                    if self.art.table(g, w).entries() != want.as_slice() {
                        return Err(format!("landmark table of {w}"));
                    }
                }
                for v in 0..n {
                    let l = near[v as usize];
                    let egress = (l != v).then(|| oracle_port(g, &self.d, l, v));
                    match *self.art.label(v) {
                        Label::Landmark(lab)
                            if lab.node == v && lab.landmark == l && lab.landmark_egress == egress => {}
                        other => return Err(format!("label of {v}: {other:?}")),
                    }
                }
            }
            SchemeKind::Hierarchical => {
                let p = self.art.partition().unwrap();
                for c in 0..p.cluster_count() as u32 {
                    let members = p.members(c);
                    let inner = cluster_distances(g, &members);
                    for (i, &w) in members.iter().enumerate() {
                        let mut want: Vec<(NodeId, u32)> = Vec::new();
                        for (j, &v) in members.iter().enumerate() {
                            if v == w {
                                continue;
                            }
                            let next = g
                                .neighbors(w)
                                .iter()
                                .copied()
                                .filter_map(|x| members.iter().position(|&y| y == x).map(|k| (x, k)))
                                .filter(|&(_, k)| inner[k][j] + 1 == inner[i][j])
                                .map(|(x, _)| x)
                                .min()
                                .unwrap();
                            want.push((v, g.port_to(w, next).unwrap()));
                        }
                        for c2 in 0..p.cluster_count() as u32 {
                            if c2 != c {
                                let l = p.leader_of(c2);
                                want.push((l, oracle_port(g, &self.d, w, l)));
                            }
                        }
                        want.sort_unstable();
                        if self.art.table(g, w).entries() != want.as_slice() {
                            return Err(format!("hierarchical table of {w}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Next node chosen at `x` for destination `t`, straight from the
    /// decision rules over the stored tables and labels.
    fn next_hop(&self, x: NodeId, t: NodeId) -> NodeId {
        let g = self.g;
        let port = match self.art.kind {
            SchemeKind::Trivial => oracle_port(g, &self.d, x, t),
            SchemeKind::Cowen | SchemeKind::Tz => {
                let Label::Landmark(lab) = *self.art.label(t) else { panic!() };
                let table = self.art.table(g, x);
                if let Some(p) = table.get(t) {
                    p
                } else if x == lab.landmark {
                    lab.landmark_egress.unwrap()
                } else {
                    table.get(lab.landmark).unwrap()
                }
            }
            SchemeKind::Hierarchical => {
                let (Label::Cluster(here), Label::Cluster(dst)) = (*self.art.label(x), *self.art.label(t)) else {
                    panic!()
                };
                let key = if here.cluster == dst.cluster { t } else { dst.leader };
                self.art.table(g, x).get(key).unwrap()
            }
        };
        g.neighbors(x)[port as usize]
    }

    /// Hop count of the routed path, or `None` if it does not arrive within
    /// `2n` hops.
    pub fn route_len(&self, s: NodeId, t: NodeId) -> Option<u32> {
        let mut x = s;
        let mut hops = 0;
        while x != t {
            if hops > 2 * self.g.node_count() as u32 {
                return None;
            }
            x = self.next_hop(x, t);
            hops += 1;
        }
        Some(hops)
    }

    /// Expected exact-mode report values from routing every ordered pair.
    pub fn stretch(&self) -> OracleStretch {
        let n = self.g.node_count() as NodeId;
        let mut o = OracleStretch::default();
        let mut by_dist: Vec<(u64, u64)> = vec![(0, 0); n as usize + 1];
        let mut adj = (0u64, 0u64);
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    continue;
                }
                let d = self.dist(s, t);
                assert_ne!(d, INF);
                let r = self.route_len(s, t).expect("route loops");
                o.pairs += 1;
                by_dist[d as usize].0 += r as u64;
                by_dist[d as usize].1 += 1;
                if r == d {
                    o.shortest += 1;
                }
                if r > 3 * d {
                    o.over_three += 1;
                }
                if o.max.is_none_or(|(r0, d0)| r as u64 * d0 as u64 > r0 as u64 * d as u64) {
                    o.max = Some((r, d));
                }
                o.histogram[bucket(r, d)] += 1;
                if d == 1 {
                    adj.0 += r as u64;
                    adj.1 += 1;
                }
            }
        }
        if o.pairs > 0 {
            let sum: f64 = by_dist
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, &(r, _))| r as f64 / d as f64)
                .sum();
            o.avg = sum / o.pairs as f64;
        } else {
            o.avg = 1.0;
        }
        o.adjacent = adj.1;
        o.avg_len1 = if adj.1 == 0 { 1.0 } else { adj.0 as f64 / adj.1 as f64 };
        o
    }
}

/// Bucket by exact comparison against the thresholds 1.25, 1.5, ..., 3.
fn bucket(r: u32, d: u32) -> usize {
    let (r, d) = (r as u64, d as u64);
    if r > 3 * d {
        return 9;
    }
    if r == 3 * d {
        return 8;
    }
    (1..8).filter(|&j| 4 * r >= (4 + j) * d).count()
}

#[derive(Debug, Default)]
pub struct OracleStretch {
    pub pairs: u64,
    pub shortest: u64,
    pub over_three: u64,
    pub max: Option<(u32, u32)>,
    pub histogram: [u64; 10],
    pub avg: f64,
    pub adjacent: u64,
    pub avg_len1: f64,
}

impl OracleStretch {
    /// Zero-tolerance comparison with an exact-mode report.
    pub fn matches(&self, r: &StretchReport) -> Result<(), String> {
        let max = self.max.map_or(1.0, |(a, b)| a as f64 / b as f64);
        let frac = if self.pairs == 0 { 1.0 } else { self.shortest as f64 / self.pairs as f64 };
        let checks = [
            ("pair_count", r.pair_count == self.pairs),
            ("avg_stretch", r.avg_stretch == self.avg),
            ("max_stretch", r.max_stretch == max),
            ("histogram", r.stretch_histogram == self.histogram),
            ("frac_shortest", r.frac_shortest == frac),
            ("adjacent_pairs", r.adjacent_pairs == self.adjacent),
            ("avg_stretch_len1", r.avg_stretch_len1 == self.avg_len1),
        ];
        match checks.iter().find(|(_, ok)| !ok) {
            None => Ok(()),
            Some((name, _)) => Err(format!("{name} differs: report {r:?}, oracle {self:?}")),
        }
    }
}

/// Floyd-Warshall restricted to the subgraph induced by `members`.
fn cluster_distances(g: &Graph, members: &[NodeId]) -> Vec<Vec<u32>> {
    let k = members.len();
    let mut d = vec![vec![INF; k]; k];
    for i in 0..k {
        d[i][i] = 0;
        for j in 0..k {
            if g.has_edge(members[i], members[j]) {
                d[i][j] = 1;
            }
        }
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if d[i][m] != INF && d[m][j] != INF && d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    d
}
