mod common;

use bicover::generators::{gen_random, RandomFamily};
use bicover::hypergraph::{
    build_hyper_cover, gen_hyper_collinear, gen_hyper_orientation, hyper_cost, hyper_edge_set, kuuu_free_check,
    merge_hyper_pass, verify_hyper_cover, HyperBlock, HyperConfig, HyperCover, KPartiteInstance,
};
use bicover::{build_cover, merge_pass, BlockTag, CoverConfig};
use common::q;
use num_traits::Signed;
use proptest::prelude::*;

fn orientation_nonneg(inst: &KPartiteInstance, t: &[usize]) -> bool {
    let c = |i: usize, a: usize| q(inst.parts[i][t[i]].coord(a));
    let v = (c(1, 0) - c(0, 0)) * (c(2, 1) - c(0, 1)) - (c(1, 1) - c(0, 1)) * (c(2, 0) - c(0, 0));
    !v.is_negative()
}

fn all_tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    sizes.iter().fold(vec![vec![]], |acc, &n| {
        acc.into_iter().flat_map(|t| (0..n).map(move |x| [t.clone(), vec![x]].concat())).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orientation_edges_match_rational_sign(n in 1usize..8, seed in 0u64..1000) {
        let inst = gen_hyper_orientation(n, seed).unwrap();
        let expected: Vec<Vec<usize>> =
            all_tuples(&inst.sizes).into_iter().filter(|t| orientation_nonneg(&inst, t)).collect();
        prop_assert_eq!(hyper_edge_set(&inst).unwrap(), expected);
    }

    #[test]
    fn hyper_covers_are_exact(n in 1usize..14, seed in 0u64..1000, r in 2usize..4, base in 4usize..20) {
        let inst = gen_hyper_orientation(n, seed).unwrap();
        let cfg = HyperConfig { r, base_threshold: base, ..Default::default() };
        let c = build_hyper_cover(&inst, &cfg).unwrap();
        let rep = verify_hyper_cover(&inst, &c).unwrap();
        prop_assert!(rep.pass, "{:?}", rep.problems);
        let merged = merge_hyper_pass(&c);
        prop_assert!(verify_hyper_cover(&inst, &merged).unwrap().pass);
        prop_assert!(merged.cost <= c.cost);
        prop_assert!(c.cost <= 3 * rep.edge_count as u64);
    }

    #[test]
    fn explicit_hyper_covers(edges in prop::collection::btree_set(prop::collection::vec(0usize..4, 3), 0..40)) {
        let inst = KPartiteInstance::explicit(vec![4, 4, 4], edges.into_iter().collect()).unwrap();
        let c = build_hyper_cover(&inst, &HyperConfig::default()).unwrap();
        prop_assert!(verify_hyper_cover(&inst, &c).unwrap().pass);
        prop_assert_eq!(hyper_cost(&c).unwrap(), c.cost);
    }

    #[test]
    fn two_part_cost_is_cost_j(m in 1usize..40, n in 1usize..40, seed in 0u64..1000) {
        let inst = gen_random(RandomFamily::Halfplanes, m, n, seed).unwrap();
        let g = merge_pass(&build_cover(&inst, &CoverConfig::default()).unwrap());
        let blocks = g.blocks.iter().map(|b| HyperBlock::new(vec![b.a.clone(), b.b.clone()], b.tag)).collect();
        let h = HyperCover::from_blocks(2, blocks);
        prop_assert_eq!(h.cost, g.cost_j);
        let hi = KPartiteInstance::explicit(vec![m, n], inst.edge_set().into_iter().map(|(p, q)| vec![p, q]).collect())
            .unwrap();
        prop_assert!(verify_hyper_cover(&hi, &h).unwrap().pass);
        let built = build_hyper_cover(&hi, &HyperConfig::default()).unwrap();
        prop_assert!(verify_hyper_cover(&hi, &built).unwrap().pass);
    }
}

#[test]
fn block_cost_by_hand() {
    let b = HyperBlock::new(vec![vec![0, 1], vec![0, 1, 2], vec![4]], BlockTag::Base);
    // 3*1 + 2*1 + 2*3
    assert_eq!(b.cost(), Some(11));
    assert_eq!(HyperBlock::new(vec![vec![0], vec![]], BlockTag::Base).cost(), None);
}

#[test]
fn planted_collinear_triples_recovered() {
    let inst = gen_hyper_collinear(12, 5, 7).unwrap();
    let edges = hyper_edge_set(&inst).unwrap();
    for i in 0..5 {
        assert!(edges.contains(&vec![i, i, i]));
    }
    let c = build_hyper_cover(&inst, &HyperConfig::default()).unwrap();
    assert!(verify_hyper_cover(&inst, &c).unwrap().pass);
    assert!(gen_hyper_collinear(3, 4, 0).is_err());
}

#[test]
fn tampered_hyper_cover_fails() {
    let inst = gen_hyper_orientation(6, 3).unwrap();
    let mut c = build_hyper_cover(&inst, &HyperConfig::default()).unwrap();
    c.cost += 1;
    let rep = verify_hyper_cover(&inst, &c).unwrap();
    assert!(!rep.pass && rep.cost_mismatch);
    c.cost -= 1;
    c.blocks.pop();
    c.cost = hyper_cost(&c).unwrap();
    assert!(!verify_hyper_cover(&inst, &c).unwrap().pass);
}

#[test]
fn complete_product_detection() {
    let full = KPartiteInstance::explicit(vec![2, 2, 2], all_tuples(&[2, 2, 2])).unwrap();
    assert!(!kuuu_free_check(&full, 2).unwrap());
    let mut most = all_tuples(&[2, 2, 2]);
    most.pop();
    let partial = KPartiteInstance::explicit(vec![2, 2, 2], most).unwrap();
    assert!(kuuu_free_check(&partial, 2).unwrap());
    assert!(!kuuu_free_check(&partial, 1).unwrap());
}

#[test]
fn hyper_config_rejected() {
    let inst = gen_hyper_orientation(4, 0).unwrap();
    assert!(build_hyper_cover(&inst, &HyperConfig { r: 1, ..Default::default() }).is_err());
}
