#![allow(dead_code)]

pub mod oracle;

use croute::graph::NodeId;
use croute::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX;

pub fn graph(edges: &[(u64, u64)]) -> Graph {
    Graph::from_edges(edges).unwrap()
}

pub fn path(n: u64) -> Graph {
    if n == 1 {
        return single();
    }
    graph(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

/// One node needs an edge list; build K2 and keep node 0 only.
pub fn single() -> Graph {
    graph(&[(0, 1)]).induced(&[true, false])
}

pub fn star(leaves: u64) -> Graph {
    graph(&(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
}

pub fn cycle(n: u64) -> Graph {
    graph(&(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn complete(n: u64) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    graph(&e)
}

/// Random labelled tree: node `i` attaches to a uniform earlier node, then
/// ids are shuffled so the tree shape is not tied to id order.
pub fn random_tree(n: u64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<u64> = (0..n).collect();
    for i in (1..ids.len()).rev() {
        ids.swap(i, rng.gen_range(0..=i));
    }
    let e: Vec<(u64, u64)> = (1..n)
        .map(|i| (ids[rng.gen_range(0..i) as usize], ids[i as usize]))
        .collect();
    graph(&e)
}

/// Random connected graph: a random tree plus each remaining pair with
/// probability `p`.
pub fn random_connected(n: u64, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let tree = random_tree(n, seed);
    let mut e: Vec<(u64, u64)> = tree
        .edges()
        .map(|(u, v)| (tree.original_id(u), tree.original_id(v)))
        .collect();
    for u in 0..n {
        for v in u + 1..n {
            if !e.contains(&(u, v)) && !e.contains(&(v, u)) && rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    graph(&e)
}

/// The small-graph corpus: every graph is connected and has at most 64
/// nodes.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in [1, 2, 3, 4, 7, 16, 64] {
        out.push((format!("path{n}"), path(n)));
    }
    for leaves in [1, 2, 5, 20, 63] {
        out.push((format!("star{leaves}"), star(leaves)));
    }
    for n in [3, 4, 5, 10, 33, 64] {
        out.push((format!("cycle{n}"), cycle(n)));
    }
    for n in [2, 3, 4, 5, 8, 16, 32] {
        out.push((format!("complete{n}"), complete(n)));
    }
    for (i, n) in [5, 12, 30, 64].into_iter().enumerate() {
        out.push((format!("tree{n}"), random_tree(n, i as u64)));
    }
    for (i, (n, p)) in [(8, 0.3), (20, 0.15), (40, 0.08), (64, 0.05), (64, 0.2)]
        .into_iter()
        .enumerate()
    {
        out.push((format!("random{n}_{p}"), random_connected(n, p, 100 + i as u64)));
    }
    for seed in 0..3 {
        let cfg = croute::topology::GenConfig::preferential(64, 2, seed);
        out.push((format!("preferential64_{seed}"), croute::topology::generate(&cfg).unwrap()));
    }
    out
}

/// All-pairs hop distances by Floyd-Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Smallest-id neighbor of `w` on a shortest path to `t`, as a port.
pub fn oracle_port(g: &Graph, d: &[Vec<u32>], w: NodeId, t: NodeId) -> u32 {
    let want = d[w as usize][t as usize] - 1;
    let x = g
        .neighbors(w)
        .iter()
        .copied()
        .filter(|&x| d[x as usize][t as usize] == want)
        .min()
        .unwrap();
    g.neighbors(w).iter().position(|&y| y == x).unwrap() as u32
}
