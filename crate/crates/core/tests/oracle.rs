mod common;

use bicover::oracle::{greedy_cover, min_cover_cost, SmallGraph, DEFAULT_EDGE_CAP};
use bicover::{verify_cover, Error, IncidenceInstance};
use common::{brute_min_cover, covered};
use proptest::prelude::*;

fn pairs(c: &bicover::BicliqueCover) -> Vec<(usize, usize)> {
    covered(&c.blocks.iter().map(|b| (b.a.clone(), b.b.clone())).collect::<Vec<_>>())
}

fn small_edges(max: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::btree_set((0usize..5, 0usize..5), 0..=max).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_brute_force(edges in small_edges(8)) {
        let g = SmallGraph::new(5, 5, &edges).unwrap();
        let (cost, witness) = min_cover_cost(&g, DEFAULT_EDGE_CAP).unwrap();
        prop_assert_eq!(cost, brute_min_cover(&edges));
        prop_assert_eq!(witness.recomputed_cost(), cost);
        prop_assert_eq!(pairs(&witness), edges);
    }

    #[test]
    fn bounded_by_greedy_and_per_edge(edges in prop::collection::btree_set((0usize..6, 0usize..6), 0..=14)) {
        let edges: Vec<_> = edges.into_iter().collect();
        let g = SmallGraph::new(6, 6, &edges).unwrap();
        let (cost, witness) = min_cover_cost(&g, DEFAULT_EDGE_CAP).unwrap();
        let greedy = greedy_cover(&g).unwrap();
        prop_assert_eq!(pairs(&greedy), edges.clone());
        prop_assert!(cost <= greedy.cost_j);
        prop_assert!(cost <= 2 * edges.len() as u64);
        let inst = IncidenceInstance::explicit(6, 6, edges).unwrap();
        prop_assert!(verify_cover(&inst, &witness).pass);
    }
}

#[test]
fn six_cycle_needs_three_stars() {
    // C6 as a bipartite graph: p_i ~ q_i, q_{i+1}. Any biclique is a star or a single path edge.
    let edges: Vec<_> = (0..3).flat_map(|i| [(i, i), (i, (i + 1) % 3)]).collect();
    let g = SmallGraph::new(3, 3, &edges).unwrap();
    assert_eq!(min_cover_cost(&g, 14).unwrap().0, 9);
    assert_eq!(brute_min_cover(&edges), 9);
}

#[test]
fn grid_lines_minimum() {
    // 3 x 3 lattice against its 6 axis lines, as p ~ q iff the point lies on the line.
    let edges: Vec<_> = (0..9).flat_map(|p| [(p, p / 3), (p, 3 + p % 3)]).collect();
    let g = SmallGraph::new(9, 6, &edges).unwrap();
    // Six stars of one line with its three points.
    assert_eq!(min_cover_cost(&g, 18).unwrap().0, 24);
    assert!(matches!(min_cover_cost(&g, 14), Err(Error::Refused(_))));
}

#[test]
fn complete_graph_is_one_block() {
    let edges: Vec<_> = (0..4).flat_map(|p| (0..3).map(move |q| (p, q))).collect();
    let g = SmallGraph::new(4, 3, &edges).unwrap();
    let (cost, w) = min_cover_cost(&g, 14).unwrap();
    assert_eq!(cost, 7);
    assert_eq!(w.blocks.len(), 1);
}

#[test]
fn empty_and_oversized() {
    let g = SmallGraph::new(3, 3, &[]).unwrap();
    assert_eq!(min_cover_cost(&g, 14).unwrap().0, 0);
    assert!(matches!(SmallGraph::new(13, 2, &[]), Err(Error::Refused(_))));
    assert!(SmallGraph::new(2, 2, &[(2, 0)]).is_err());
}
