//! Binary operations on coauthorship graphs: pairwise intersection and
//! the boundary-spanning network of authors active in two or more
//! domains.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::YearRange;
use crate::error::{Error, Result};

use super::{AuthorKey, CoauthorshipGraph, VertexInfo};

/// Graph intersection: vertices in both inputs, edges in both inputs
/// with weight the minimum of the two. Domain labels and publication
/// sets of surviving vertices are unioned. Commutative and idempotent.
pub fn intersect(g1: &CoauthorshipGraph, g2: &CoauthorshipGraph) -> CoauthorshipGraph {
    let window = YearRange::new(
        g1.window().start.max(g2.window().start),
        g1.window().end.min(g2.window().end),
    );
    let min_copubs = g1.min_copubs().max(g2.min_copubs());

    let mut vertices: BTreeMap<AuthorKey, VertexInfo> = BTreeMap::new();
    for (key, info1) in g1.vertices() {
        if let Some(info2) = g2.vertex(key) {
            vertices.insert(
                key.clone(),
                VertexInfo {
                    domains: info1.domains.union(&info2.domains).cloned().collect(),
                    publications: info1
                        .publications
                        .union(&info2.publications)
                        .cloned()
                        .collect(),
                },
            );
        }
    }
    let edges: Vec<((AuthorKey, AuthorKey), u32)> = g1
        .edges()
        .filter_map(|(a, b, w1)| {
            g2.weight(a, b)
                .map(|w2| ((a.clone(), b.clone()), w1.min(w2)))
        })
        .collect();
    CoauthorshipGraph::from_parts(window, min_copubs, vertices, edges)
        .expect("intersection of valid graphs is valid")
}

/// Extracts the boundary-spanning network from per-domain graphs.
///
/// A vertex qualifies when it appears in at least two of the input
/// graphs; it keeps the union of its domain labels. The edge set is
/// every per-domain edge restricted to qualifying endpoints, merged
/// with weight the maximum across domains.
pub fn boundary_spanning(graphs: &[&CoauthorshipGraph]) -> Result<CoauthorshipGraph> {
    if graphs.len() < 2 {
        return Err(Error::TooFewGraphs { got: graphs.len() });
    }

    let mut appearances: BTreeMap<AuthorKey, usize> = BTreeMap::new();
    for g in graphs {
        for key in g.vertex_keys() {
            *appearances.entry(key.clone()).or_insert(0) += 1;
        }
    }
    let qualifying: BTreeSet<AuthorKey> = appearances
        .into_iter()
        .filter(|(_, n)| *n >= 2)
        .map(|(k, _)| k)
        .collect();

    let mut vertices: BTreeMap<AuthorKey, VertexInfo> = BTreeMap::new();
    for g in graphs {
        for (key, info) in g.vertices() {
            if !qualifying.contains(key) {
                continue;
            }
            let merged = vertices.entry(key.clone()).or_default();
            merged.domains.extend(info.domains.iter().cloned());
            merged.publications.extend(info.publications.iter().cloned());
        }
    }

    let mut edges: BTreeMap<(AuthorKey, AuthorKey), u32> = BTreeMap::new();
    for g in graphs {
        for (a, b, w) in g.edges() {
            if qualifying.contains(a) && qualifying.contains(b) {
                let key = if a < b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                let entry = edges.entry(key).or_insert(0);
                *entry = (*entry).max(w);
            }
        }
    }

    let window = graphs
        .iter()
        .skip(1)
        .fold(graphs[0].window(), |acc, g| {
            YearRange::new(acc.start.max(g.window().start), acc.end.min(g.window().end))
        });
    let min_copubs = graphs.iter().map(|g| g.min_copubs()).min().unwrap_or(1);

    // Restriction can isolate a qualifying vertex; such authors still
    // belong to the boundary network (they bridge domains on their own),
    // so vertices are kept even without surviving edges.
    CoauthorshipGraph::from_parts(window, min_copubs, vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::{graph_from_edges, graph_with_domains};

    #[test]
    fn intersect_example() {
        let g1 = graph_from_edges(&[("a", "b", 2), ("b", "c", 3)]);
        let g2 = graph_from_edges(&[("b", "c", 2), ("c", "d", 2)]);
        let gi = intersect(&g1, &g2);
        let keys: Vec<&str> = gi.vertex_keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, vec!["b", "c"]);
        assert_eq!(gi.edge_count(), 1);
        assert_eq!(
            gi.weight(&AuthorKey("b".into()), &AuthorKey("c".into())),
            Some(2),
            "weight is the minimum of the two"
        );
    }

    #[test]
    fn intersect_identity_and_disjoint() {
        let g = graph_with_domains(
            &[("a", "b", 2), ("b", "c", 3)],
            &[("a", &["RET"]), ("b", &["RET"]), ("c", &["RET"])],
        );
        assert_eq!(intersect(&g, &g), g);

        let h = graph_from_edges(&[("x", "y", 2)]);
        let gi = intersect(&g, &h);
        assert!(gi.is_empty());
        assert_eq!(gi.edge_count(), 0);
    }

    #[test]
    fn intersect_commutative() {
        let g1 = graph_from_edges(&[("a", "b", 2), ("b", "c", 3), ("c", "d", 1)]);
        let g2 = graph_from_edges(&[("a", "b", 5), ("c", "d", 1), ("d", "e", 2)]);
        assert_eq!(intersect(&g1, &g2), intersect(&g2, &g1));
    }

    #[test]
    fn boundary_requires_two_graphs() {
        let g = graph_from_edges(&[("a", "b", 2)]);
        assert!(matches!(
            boundary_spanning(&[&g]),
            Err(Error::TooFewGraphs { got: 1 })
        ));
    }

    #[test]
    fn boundary_membership_and_labels() {
        let ret = graph_with_domains(
            &[("a", "b", 2), ("b", "c", 2)],
            &[("a", &["RET"]), ("b", &["RET"]), ("c", &["RET"])],
        );
        let nnm = graph_with_domains(
            &[("a", "b", 3), ("b", "d", 2)],
            &[("a", &["NNM"]), ("b", &["NNM"]), ("d", &["NNM"])],
        );
        let bg = boundary_spanning(&[&ret, &nnm]).unwrap();
        let keys: Vec<&str> = bg.vertex_keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, vec!["a", "b"], "c and d are single-domain");
        let a = bg.vertex(&AuthorKey("a".into())).unwrap();
        let labels: Vec<&str> = a.domains.iter().map(|s| s.as_str()).collect();
        assert_eq!(labels, vec!["NNM", "RET"]);
        assert_eq!(
            bg.weight(&AuthorKey("a".into()), &AuthorKey("b".into())),
            Some(3),
            "weight merged with max"
        );
    }

    #[test]
    fn boundary_vertices_match_pairwise_intersection_union() {
        let g1 = graph_from_edges(&[("a", "b", 2), ("b", "c", 2), ("c", "d", 2)]);
        let g2 = graph_from_edges(&[("a", "b", 2), ("d", "e", 2)]);
        let g3 = graph_from_edges(&[("c", "d", 2), ("e", "f", 2), ("a", "f", 2)]);
        let bg = boundary_spanning(&[&g1, &g2, &g3]).unwrap();
        let direct: BTreeSet<&AuthorKey> = bg.vertex_keys().collect();

        let mut via_pairs: BTreeSet<AuthorKey> = BTreeSet::new();
        let inputs = [&g1, &g2, &g3];
        for i in 0..inputs.len() {
            for j in (i + 1)..inputs.len() {
                via_pairs.extend(intersect(inputs[i], inputs[j]).vertex_keys().cloned());
            }
        }
        let via_pairs: BTreeSet<&AuthorKey> = via_pairs.iter().collect();
        assert_eq!(direct, via_pairs);
    }
}
