//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use bicover::{GeomSet, Point};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub fn q(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Incidence by direct rational evaluation of the set's defining inequality.
pub fn rational_incident(p: &Point, g: &GeomSet) -> bool {
    let (x, y) = (q(p.coord(0)), q(p.coord(1)));
    match g {
        GeomSet::Halfplane { a, b, c } => q(*a) * &x + q(*b) * &y <= q(*c),
        GeomSet::LineEq { a, b, c } => q(*a) * &x + q(*b) * &y == q(*c),
        GeomSet::Disk { center, radius } => {
            let dx = x - q(center[0]);
            let dy = y - q(center[1]);
            let r = q(*radius);
            &dx * &dx + &dy * &dy <= &r * &r
        }
        GeomSet::Halfspace3 { a, b, c, e } => q(*a) * x + q(*b) * y + q(*c) * q(p.coord(2)) <= q(*e),
        GeomSet::Generic(_) => panic!("no direct test for generic sets"),
    }
}

/// Minimum cover cost by shortest paths over sets of covered edges.
///
/// Every biclique `A x B` inside the edge set is a move from `covered` to
/// `covered | edges(A x B)` with weight `|A| + |B|`. Only for at most 8 edges.
pub fn brute_min_cover(edges: &[(usize, usize)]) -> u64 {
    assert!(edges.len() <= 8, "brute force is for tiny graphs");
    if edges.is_empty() {
        return 0;
    }
    let mut ps: Vec<usize> = edges.iter().map(|e| e.0).collect();
    let mut qs: Vec<usize> = edges.iter().map(|e| e.1).collect();
    ps.sort_unstable();
    ps.dedup();
    qs.sort_unstable();
    qs.dedup();
    let pos = |e: (usize, usize)| edges.iter().position(|&x| x == e);
    let mut moves: Vec<(usize, u64)> = Vec::new();
    for amask in 1u32..(1 << ps.len()) {
        for bmask in 1u32..(1 << qs.len()) {
            let mut mask = 0usize;
            let mut ok = true;
            for (_, &p) in ps.iter().enumerate().filter(|(i, _)| amask >> i & 1 == 1) {
                for (_, &qq) in qs.iter().enumerate().filter(|(j, _)| bmask >> j & 1 == 1) {
                    match pos((p, qq)) {
                        Some(k) => mask |= 1 << k,
                        None => ok = false,
                    }
                }
            }
            if ok {
                moves.push((mask, (amask.count_ones() + bmask.count_ones()) as u64));
            }
        }
    }
    let full = (1usize << edges.len()) - 1;
    let mut dist = vec![u64::MAX; full + 1];
    dist[0] = 0;
    // Covered sets only grow, so increasing numeric order is a topological order.
    for s in 0..=full {
        if dist[s] == u64::MAX {
            continue;
        }
        for &(m, c) in &moves {
            let t = s | m;
            if t != s && dist[s] + c < dist[t] {
                dist[t] = dist[s] + c;
            }
        }
    }
    dist[full]
}

/// Sorted list of pairs covered by `(A, B)` blocks.
pub fn covered(blocks: &[(Vec<usize>, Vec<usize>)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> =
        blocks.iter().flat_map(|(a, b)| a.iter().flat_map(move |&p| b.iter().map(move |&q| (p, q)))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `|A||B| / (|A| + |B|)` compared exactly with `num / den`.
pub fn ratio_at_least(a: usize, b: usize, num: u64, den: u64) -> bool {
    let lhs = BigRational::new(BigInt::from((a * b) as u64), BigInt::from((a + b) as u64));
    let rhs = BigRational::new(BigInt::from(num), BigInt::from(den));
    !(lhs - rhs).is_negative() || den.is_zero()
}
