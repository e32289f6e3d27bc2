use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::stretch::adjacent_route_lengths;
use crate::error::Result;
use crate::graph::{Fingerprint, Graph};
use crate::schemes::{SchemeArtifacts, SchemeKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableStats {
    pub kind: SchemeKind,
    pub fingerprint: Fingerprint,
    pub avg_entries: f64,
    pub max_entries: usize,
    /// `(entries, nodes)` pairs, ascending in `entries`.
    pub histogram: Vec<(usize, u64)>,
    /// Landmark count for landmark schemes, cluster count for the
    /// hierarchical baseline, zero for the trivial scheme.
    pub centers: usize,
}

pub fn table_stats(art: &SchemeArtifacts) -> TableStats {
    let sizes = art.table_sizes();
    let (avg, max) = size_summary(&sizes);
    let mut hist = BTreeMap::new();
    for &s in &sizes {
        *hist.entry(s).or_insert(0u64) += 1;
    }
    let centers = match (art.landmarks(), art.partition()) {
        (Some(a), _) => a.len(),
        (_, Some(p)) => p.cluster_count(),
        _ => 0,
    };
    TableStats {
        kind: art.kind,
        fingerprint: art.fingerprint.clone(),
        avg_entries: avg,
        max_entries: max,
        histogram: hist.into_iter().collect(),
        centers,
    }
}

fn size_summary(sizes: &[usize]) -> (f64, usize) {
    if sizes.is_empty() {
        return (0.0, 0);
    }
    let total: u64 = sizes.iter().map(|&s| s as u64).sum();
    (total as f64 / sizes.len() as f64, sizes.iter().copied().max().unwrap_or(0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReinsertionReport {
    pub kind: SchemeKind,
    pub fingerprint: Fingerprint,
    pub adjacent_pairs: u64,
    /// Ordered adjacent pairs `(u, v)` routed over more than one hop.
    pub violating_adjacencies: u64,
    pub base_avg_table: f64,
    pub base_max_table: usize,
    pub augmented_avg_table: f64,
    pub augmented_max_table: usize,
}

/// Routes every ordered adjacent pair and adds one direct entry at the
/// source for each pair routed over more than one hop.
pub fn neighbor_reinsertion(art: &SchemeArtifacts, g: &Graph) -> Result<ReinsertionReport> {
    art.check_graph(g)?;
    let routed = adjacent_route_lengths(art, g)?;
    let base = art.table_sizes();
    let mut augmented = base.clone();
    let mut violations = 0u64;
    for &(u, _, len) in &routed {
        if len > 1 {
            violations += 1;
            augmented[u as usize] += 1;
        }
    }
    let (base_avg, base_max) = size_summary(&base);
    let (aug_avg, aug_max) = size_summary(&augmented);
    Ok(ReinsertionReport {
        kind: art.kind,
        fingerprint: art.fingerprint.clone(),
        adjacent_pairs: routed.len() as u64,
        violating_adjacencies: violations,
        base_avg_table: base_avg,
        base_max_table: base_max,
        augmented_avg_table: aug_avg,
        augmented_max_table: aug_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::testgraphs::*;
    use crate::schemes::{build_landmark_scheme, build_trivial, build_tz, LandmarkSet};

    #[test]
    fn trivial_tables() {
        let g = cycle(5);
        let t = table_stats(&build_trivial(&g).unwrap());
        assert_eq!((t.avg_entries, t.max_entries), (4.0, 4));
        assert_eq!(t.histogram, vec![(4, 5)]);
    }

    #[test]
    fn complete_graph_single_landmark() {
        let k = complete(4);
        let a = LandmarkSet::new(&k, [0]).unwrap();
        let art = build_landmark_scheme(&k, &a, SchemeKind::Cowen).unwrap();
        let t = table_stats(&art);
        // leaves hold the landmark only; the landmark holds nothing
        assert_eq!(t.avg_entries, 0.75);
        assert_eq!(t.histogram, vec![(0, 1), (1, 3)]);
        let r = neighbor_reinsertion(&art, &k).unwrap();
        assert_eq!(r.violating_adjacencies, 6);
        assert_eq!(r.augmented_max_table, 3);
        assert_eq!(r.augmented_avg_table, 9.0 / 4.0);
    }

    #[test]
    fn trees_have_no_violations() {
        let g = from(&[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)]);
        for seed in 0..4 {
            let art = build_tz(&g, 2, 4.0, seed).unwrap();
            let r = neighbor_reinsertion(&art, &g).unwrap();
            assert_eq!(r.violating_adjacencies, 0);
            assert_eq!(r.augmented_avg_table, r.base_avg_table);
        }
        let r = neighbor_reinsertion(&build_trivial(&cycle(6)).unwrap(), &cycle(6)).unwrap();
        assert_eq!(r.violating_adjacencies, 0);
        assert_eq!(r.adjacent_pairs, 12);
    }
}
