use bicover::extremal::{
    alphas, check_decrement, check_scaling, e_func, edge_bound_check, extract_dense_biclique, f_func, fstar_func,
    kst_free_check, DecrementOutcome, Envelope,
};
use bicover::generators::{gen_clone, gen_st_grid};
use bicover::{build_cover, merge_pass, verify_cover, CoverConfig};
use proptest::prelude::*;

/// Solves `alpha_i + sum_{j != i} d_j alpha_j = sum_j d_j - d_i` by Gaussian elimination.
fn solve_alphas(d: &[u32]) -> Vec<f64> {
    let k = d.len();
    let total: f64 = d.iter().map(|&x| x as f64).sum();
    let mut a: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut row: Vec<f64> = (0..k).map(|j| if i == j { 1.0 } else { d[j] as f64 }).collect();
            row.push(total - d[i] as f64);
            row
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, piv);
        for r in 0..k {
            if r != c {
                let f = a[r][c] / a[c][c];
                for j in c..=k {
                    a[r][j] -= f * a[c][j];
                }
            }
        }
    }
    (0..k).map(|i| a[i][k] / a[i][i]).collect()
}

fn brute_kst(m: usize, n: usize, edges: &[(usize, usize)], s: usize, u: usize) -> bool {
    let adj = |p: usize, q: usize| edges.contains(&(p, q));
    for amask in 0u32..(1 << m) {
        if amask.count_ones() as usize != s {
            continue;
        }
        let common = (0..n).filter(|&q| (0..m).all(|p| amask >> p & 1 == 0 || adj(p, q))).count();
        if common >= u {
            return false;
        }
    }
    true
}

fn dims(k: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<u32>> {
    k.prop_flat_map(|k| prop::collection::vec(2u32..=6, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn alphas_solve_the_linear_system(d in dims(2..=5)) {
        let a = alphas(&d).unwrap();
        for (x, y) in a.iter().zip(solve_alphas(&d)) {
            prop_assert!((x - y).abs() < 1e-9, "{:?} {:?}", a, d);
        }
        prop_assert!(a.iter().all(|&x| x > 0.0 && x < 1.0));
    }

    #[test]
    fn scaling_identity(d in dims(2..=4), r in 1.0f64..100.0, seed in prop::collection::vec(1.0f64..13.8, 4)) {
        let n: Vec<f64> = seed[..d.len()].iter().map(|x| x.exp()).collect();
        let rep = check_scaling(&d, r, &n).unwrap();
        prop_assert!(rep.residual <= 1e-9 && rep.matrix_residual <= 1e-9);
        // Direct check for the first side with the closed-form exponents.
        let a = solve_alphas(&d);
        let prod = |v: &[f64]| v.iter().zip(&a).map(|(x, al)| x.powf(*al)).product::<f64>();
        let mut scaled = n.clone();
        let mut lift = 1.0;
        for j in 1..d.len() {
            scaled[j] /= r.powi(d[j] as i32);
            lift *= r.powi(d[j] as i32);
        }
        scaled[0] /= r;
        let lhs = lift * prod(&scaled);
        prop_assert!((lhs / prod(&n) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_sided_fstar_is_graph_envelope(d1 in 2u32..6, d2 in 2u32..6, m in 1.0f64..1e5, n in 1.0f64..1e5) {
        let env = Envelope::new(vec![d1, d2], 0.0).unwrap();
        let g = env.graph_value(m, n).unwrap();
        let fs = fstar_func(&[d1, d2], &[m, n], 0.0).unwrap();
        prop_assert!((g / fs - 1.0).abs() < 1e-12);
        let f = f_func(&[d1, d2], &[m, n], 0.0).unwrap();
        prop_assert!((f / g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decrement_holds_when_hypothesis_met(d in dims(2..=3), logs in prop::collection::vec(0.7f64..13.8, 3)) {
        let n: Vec<f64> = logs[..d.len()].iter().map(|x| x.exp()).collect();
        for i in (0..d.len()).filter(|&i| d[i] >= 3) {
            let out = check_decrement(&d, i, &n, 0.0).unwrap();
            prop_assert!(!matches!(out, DecrementOutcome::Fails { .. }), "{:?} {:?} {:?}", d, n, out);
        }
    }

    #[test]
    fn kst_matches_brute_force(
        edges in prop::collection::btree_set((0usize..6, 0usize..6), 0..30), s in 1usize..4, u in 1usize..4,
    ) {
        let edges: Vec<_> = edges.into_iter().collect();
        prop_assert_eq!(kst_free_check(6, 6, &edges, s, u).unwrap(), brute_kst(6, 6, &edges, s, u));
    }
}

#[test]
fn e_three_sides_by_hand() {
    // d = (2,2,2): alpha_i = 1 - 1/(2 + 3) = 4/5.
    let v = e_func(&[2, 2, 2], &[32.0, 32.0, 32.0]).unwrap();
    assert!((v - 2f64.powi(12)).abs() < 1e-6);
}

#[test]
fn grid_and_clones_are_kst_free() {
    for k in 2..=4 {
        let g = gen_st_grid(k).unwrap();
        let e = g.edge_set();
        assert!(kst_free_check(g.m, g.n, &e, 2, 2).unwrap());
        for c in 2..=3 {
            let cl = gen_clone(&g, c).unwrap();
            let ce = cl.edge_set();
            assert_eq!(ce.len(), e.len() * c * c);
            assert!(kst_free_check(cl.m, cl.n, &ce, c + 1, c + 1).unwrap());
            assert!(!kst_free_check(cl.m, cl.n, &ce, c, c).unwrap());
        }
    }
}

#[test]
fn clone_covers_respect_edge_bound() {
    for (k, c) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        let cl = gen_clone(&gen_st_grid(k).unwrap(), c).unwrap();
        let cover = merge_pass(&build_cover(&cl, &CoverConfig::default()).unwrap());
        assert!(verify_cover(&cl, &cover).pass);
        let rep = edge_bound_check(cl.edge_set().len(), &cover, c + 1, c + 1);
        assert!(rep.pass, "{rep:?}");
        assert!(rep.slack >= 0);
    }
}

#[test]
fn dense_block_meets_average() {
    let g = gen_st_grid(4).unwrap();
    let cover = merge_pass(&build_cover(&g, &CoverConfig::default()).unwrap());
    let e = g.edge_set().len();
    let d = extract_dense_biclique(e, &cover).unwrap();
    assert!(d.meets_average);
    // Exact comparison of the two rationals done again here.
    assert!(d.ratio_num as u128 * cover.cost_j as u128 >= e as u128 * d.ratio_den as u128);
    assert_eq!(d.ratio_num, (d.a.len() * d.b.len()) as u64);
    assert_eq!(d.ratio_den, (d.a.len() + d.b.len()) as u64);
}

#[test]
fn clone_needs_k22_free_base() {
    let g = bicover::IncidenceInstance::explicit(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
    assert!(gen_clone(&g, 2).is_err());
}
