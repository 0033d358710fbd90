//! Structural graph descriptors: density, mean collaborators,
//! betweenness centrality, and connected components.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{AuthorKey, CoauthorshipGraph};

/// Graph density 2m / (n(n−1)); 0 for an edgeless graph, 1 for a
/// complete one. Undefined below two vertices.
pub fn density(graph: &CoauthorshipGraph) -> Result<f64> {
    let n = graph.vertex_count();
    if n < 2 {
        return Err(Error::DensityUndefined);
    }
    let m = graph.edge_count();
    Ok(2.0 * m as f64 / (n as f64 * (n as f64 - 1.0)))
}

/// Mean degree 2m/n; 0 for the empty graph.
pub fn avg_collaborators(graph: &CoauthorshipGraph) -> f64 {
    let n = graph.vertex_count();
    if n == 0 {
        return 0.0;
    }
    2.0 * graph.edge_count() as f64 / n as f64
}

/// Indexed adjacency view in sorted-key order, shared by the traversal
/// algorithms so vertex numbering is deterministic.
pub(crate) struct Adjacency {
    pub keys: Vec<AuthorKey>,
    pub neighbors: Vec<Vec<usize>>,
}

impl Adjacency {
    pub fn of(graph: &CoauthorshipGraph) -> Adjacency {
        let keys: Vec<AuthorKey> = graph.vertex_keys().cloned().collect();
        let index: BTreeMap<&AuthorKey, usize> =
            keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut neighbors = vec![Vec::new(); keys.len()];
        for (a, b, _) in graph.edges() {
            let (ia, ib) = (index[a], index[b]);
            neighbors[ia].push(ib);
            neighbors[ib].push(ia);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Adjacency { keys, neighbors }
    }
}

/// Betweenness centrality over unordered vertex pairs, unnormalized,
/// shortest paths counted on the unweighted graph.
///
/// Brandes' dependency accumulation runs once per source in O(n·m);
/// per-source contributions are summed in source order so the result is
/// identical for any `threads` value. Unreachable pairs contribute 0.
pub fn betweenness(graph: &CoauthorshipGraph) -> BTreeMap<AuthorKey, f64> {
    betweenness_with_threads(graph, 1)
}

pub fn betweenness_with_threads(
    graph: &CoauthorshipGraph,
    threads: usize,
) -> BTreeMap<AuthorKey, f64> {
    let adj = Adjacency::of(graph);
    let n = adj.keys.len();
    if n == 0 {
        return BTreeMap::new();
    }
    let threads = threads.clamp(1, n);

    let mut per_source: Vec<Vec<f64>> = vec![Vec::new(); n];
    if threads == 1 {
        for (s, slot) in per_source.iter_mut().enumerate() {
            *slot = source_dependencies(&adj, s);
        }
    } else {
        let chunk = n.div_ceil(threads);
        std::thread::scope(|scope| {
            for (c, slots) in per_source.chunks_mut(chunk).enumerate() {
                let adj = &adj;
                scope.spawn(move || {
                    for (offset, slot) in slots.iter_mut().enumerate() {
                        *slot = source_dependencies(adj, c * chunk + offset);
                    }
                });
            }
        });
    }

    let mut scores = vec![0.0f64; n];
    for deltas in &per_source {
        for (v, d) in deltas.iter().enumerate() {
            scores[v] += d;
        }
    }
    // Each unordered pair was accumulated from both endpoints.
    adj.keys
        .iter()
        .cloned()
        .zip(scores.into_iter().map(|s| s / 2.0))
        .collect()
}

/// One Brandes pass: dependency of every vertex on shortest paths from
/// source `s`.
fn source_dependencies(adj: &Adjacency, s: usize) -> Vec<f64> {
    let n = adj.keys.len();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    sigma[s] = 1.0;
    dist[s] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &adj.neighbors[v] {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                predecessors[w].push(v);
            }
        }
    }
    let mut delta = vec![0.0f64; n];
    while let Some(w) = order.pop() {
        for &v in &predecessors[w] {
            delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w]);
        }
    }
    delta[s] = 0.0;
    delta
}

/// Connected components sorted by size descending, ties by smallest
/// member key; members sorted within each cluster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterSummary {
    pub clusters: Vec<Vec<AuthorKey>>,
    pub sizes: Vec<usize>,
    pub count: usize,
    pub max_size: usize,
}

pub fn connected_components(graph: &CoauthorshipGraph) -> ClusterSummary {
    let adj = Adjacency::of(graph);
    let n = adj.keys.len();
    let mut seen = vec![false; n];
    let mut clusters: Vec<Vec<AuthorKey>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            members.push(adj.keys[v].clone());
            for &w in &adj.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        members.sort();
        clusters.push(members);
    }
    clusters.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    let sizes: Vec<usize> = clusters.iter().map(|c| c.len()).collect();
    ClusterSummary {
        count: clusters.len(),
        max_size: sizes.iter().copied().max().unwrap_or(0),
        sizes,
        clusters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::graph_from_edges;

    #[test]
    fn density_of_complete_k4_is_one() {
        let g = graph_from_edges(&[
            ("a", "b", 1),
            ("a", "c", 1),
            ("a", "d", 1),
            ("b", "c", 1),
            ("b", "d", 1),
            ("c", "d", 1),
        ]);
        assert_eq!(density(&g).unwrap(), 1.0);
    }

    #[test]
    fn density_undefined_below_two_vertices() {
        let g = CoauthorshipGraph::empty(crate::corpus::YearRange::new(2000, 2015), 2);
        assert!(matches!(density(&g), Err(Error::DensityUndefined)));
    }

    #[test]
    fn forest_density_matches_closed_form() {
        // path on 5 vertices: a tree with n-1 edges
        let g = graph_from_edges(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "e", 1)]);
        let n = 5.0;
        assert!((density(&g).unwrap() - 2.0 * (n - 1.0) / (n * (n - 1.0))).abs() < 1e-15);
    }

    #[test]
    fn avg_collaborators_single_edge() {
        let g = graph_from_edges(&[("a", "b", 1)]);
        assert_eq!(avg_collaborators(&g), 1.0);
        let empty = CoauthorshipGraph::empty(crate::corpus::YearRange::new(2000, 2015), 2);
        assert_eq!(avg_collaborators(&empty), 0.0);
    }

    #[test]
    fn betweenness_path_center() {
        let g = graph_from_edges(&[("a", "b", 1), ("b", "c", 1)]);
        let c = betweenness(&g);
        assert_eq!(c[&AuthorKey("b".into())], 1.0);
        assert_eq!(c[&AuthorKey("a".into())], 0.0);
        assert_eq!(c[&AuthorKey("c".into())], 0.0);
    }

    #[test]
    fn betweenness_star_center_counts_leaf_pairs() {
        let g = graph_from_edges(&[("x", "a", 1), ("x", "b", 1), ("x", "c", 1)]);
        let c = betweenness(&g);
        assert_eq!(c[&AuthorKey("x".into())], 3.0);
    }

    #[test]
    fn betweenness_cycle_c4_split_paths() {
        let g = graph_from_edges(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)]);
        let c = betweenness(&g);
        for v in ["a", "b", "c", "d"] {
            assert!((c[&AuthorKey(v.into())] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn betweenness_disconnected_pairs_contribute_zero() {
        let g = graph_from_edges(&[("a", "b", 1), ("b", "c", 1), ("x", "y", 1)]);
        let c = betweenness(&g);
        assert_eq!(c[&AuthorKey("b".into())], 1.0);
        assert_eq!(c[&AuthorKey("x".into())], 0.0);
    }

    #[test]
    fn betweenness_thread_count_does_not_change_bits() {
        let g = graph_from_edges(&[
            ("a", "b", 1),
            ("b", "c", 1),
            ("c", "d", 1),
            ("d", "e", 1),
            ("e", "a", 1),
            ("b", "e", 1),
            ("c", "f", 1),
        ]);
        let one = betweenness_with_threads(&g, 1);
        for threads in [2, 3, 7, 64] {
            let multi = betweenness_with_threads(&g, threads);
            assert_eq!(one, multi);
        }
    }

    #[test]
    fn tree_betweenness_sum_identity() {
        // Σ_v c(v) over a tree equals Σ_pairs (path length − 1).
        let g = graph_from_edges(&[("a", "b", 1), ("b", "c", 1), ("b", "d", 1), ("d", "e", 1)]);
        let total: f64 = betweenness(&g).values().sum();
        // pairwise path lengths: ab1 ac2 ad2 ae3 bc1 bd1 be2 cd2 ce3 de1
        let expected: f64 = [1, 2, 2, 3, 1, 1, 2, 2, 3, 1]
            .iter()
            .map(|l| (l - 1) as f64)
            .sum();
        assert!((total - expected).abs() < 1e-12);
    }

    #[test]
    fn components_two_triangles() {
        let g = graph_from_edges(&[
            ("a", "b", 1),
            ("b", "c", 1),
            ("c", "a", 1),
            ("x", "y", 1),
            ("y", "z", 1),
            ("z", "x", 1),
        ]);
        let summary = connected_components(&g);
        assert_eq!(summary.count, 2);
        assert_eq!(summary.max_size, 3);
        assert_eq!(summary.sizes, vec![3, 3]);
        // tie broken by smallest member: {a,b,c} before {x,y,z}
        assert_eq!(summary.clusters[0][0].as_str(), "a");
    }

    #[test]
    fn components_empty_graph() {
        let g = CoauthorshipGraph::empty(crate::corpus::YearRange::new(2000, 2015), 2);
        let summary = connected_components(&g);
        assert_eq!(summary.count, 0);
        assert_eq!(summary.max_size, 0);
    }
}
