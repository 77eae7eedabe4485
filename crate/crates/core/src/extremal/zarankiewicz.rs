//! Forbidden complete bipartite subgraphs and the edge bounds they give a cover.

use crate::cover::BicliqueCover;
use crate::error::{Error, Result};
use serde::Serialize;

/// Caps for the exhaustive `K_{s,u}` search.
pub const KST_MAX_SIDE: usize = 1024;
pub const KST_MAX_PARAM: usize = 6;

struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn and_count(&self, other: &Bits, out: &mut Bits) -> u32 {
        let mut c = 0;
        for ((o, a), b) in out.words.iter_mut().zip(&self.words).zip(&other.words) {
            *o = a & b;
            c += o.count_ones();
        }
        c
    }

    fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }
}

/// True iff no `s` vertices of `P` have `u` common neighbours in `Q`.
pub fn kst_free_check(m: usize, n: usize, edges: &[(usize, usize)], s: usize, u: usize) -> Result<bool> {
    if s == 0 || u == 0 || s > KST_MAX_PARAM || u > KST_MAX_PARAM {
        return Err(Error::Refused(format!(
            "s and u must lie in 1..={KST_MAX_PARAM}, got s={s}, u={u}"
        )));
    }
    if m > KST_MAX_SIDE || n > KST_MAX_SIDE {
        return Err(Error::Refused(format!(
            "sides of {m} x {n} exceed the exhaustive cap of {KST_MAX_SIDE}"
        )));
    }
    let mut rows: Vec<Bits> = (0..m).map(|_| Bits::new(n)).collect();
    for &(p, q) in edges {
        if p >= m || q >= n {
            return Err(Error::contract(format!("edge ({p}, {q}) out of range")));
        }
        rows[p].set(q);
    }
    let candidates: Vec<usize> = (0..m).filter(|&p| rows[p].count() as usize >= u).collect();
    let mut scratch: Vec<Bits> = (0..s).map(|_| Bits::new(n)).collect();
    for (k, &p) in candidates.iter().enumerate() {
        scratch[0].words.clone_from(&rows[p].words);
        if extend(&rows, &candidates, k + 1, 1, s, u as u32, &mut scratch) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth-first choice of further rows keeping at least `u` common neighbours.
fn extend(rows: &[Bits], cand: &[usize], from: usize, depth: usize, s: usize, u: u32, scratch: &mut [Bits]) -> bool {
    if depth == s {
        return true;
    }
    if cand.len() - from < s - depth {
        return false;
    }
    for k in from..cand.len() {
        let (head, tail) = scratch.split_at_mut(depth);
        let c = head[depth - 1].and_count(&rows[cand[k]], &mut tail[0]);
        if c >= u && extend(rows, cand, k + 1, depth + 1, s, u, scratch) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeBoundReport {
    pub s: usize,
    pub u: usize,
    pub edge_count: u64,
    pub cost_j: u64,
    /// `(s + u) * costJ`.
    pub bound: u64,
    pub slack: i128,
    /// Blocks with `|A||B| > (s + u)(|A| + |B|)`.
    pub violating_blocks: Vec<usize>,
    pub pass: bool,
}

/// Checks `|A_i||B_i| <= (s+u)(|A_i|+|B_i|)` per block and `|E| <= (s+u) costJ` overall.
pub fn edge_bound_check(edge_count: usize, cover: &BicliqueCover, s: usize, u: usize) -> EdgeBoundReport {
    let w = (s + u) as u64;
    let violating_blocks: Vec<usize> = cover
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.edge_count() > w * b.cost())
        .map(|(i, _)| i)
        .collect();
    let cost_j = cover.recomputed_cost();
    let bound = w * cost_j;
    let edge_count = edge_count as u64;
    EdgeBoundReport {
        s,
        u,
        edge_count,
        cost_j,
        bound,
        slack: bound as i128 - edge_count as i128,
        pass: violating_blocks.is_empty() && edge_count <= bound,
        violating_blocks,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DenseBiclique {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    /// `|A||B|` and `|A| + |B|`; the ratio is their quotient.
    pub ratio_num: u64,
    pub ratio_den: u64,
    /// Whether `|A||B| / (|A|+|B|) >= |E| / costJ`, compared exactly.
    pub meets_average: bool,
}

impl DenseBiclique {
    pub fn ratio(&self) -> f64 {
        self.ratio_num as f64 / self.ratio_den as f64
    }
}

/// The block maximising `|A||B| / (|A| + |B|)`.
pub fn extract_dense_biclique(edge_count: usize, cover: &BicliqueCover) -> Result<DenseBiclique> {
    let best = cover
        .blocks
        .iter()
        .filter(|b| b.cost() > 0)
        .reduce(|best, b| {
            // b beats best iff e_b / c_b > e_best / c_best.
            if b.edge_count() as u128 * best.cost() as u128 > best.edge_count() as u128 * b.cost() as u128 {
                b
            } else {
                best
            }
        })
        .ok_or_else(|| Error::Refused("cover has no blocks".into()))?;
    let (num, den) = (best.edge_count(), best.cost());
    let cost_j = cover.recomputed_cost();
    Ok(DenseBiclique {
        a: best.a.clone(),
        b: best.b.clone(),
        ratio_num: num,
        ratio_den: den,
        meets_average: num as u128 * cost_j as u128 >= edge_count as u128 * den as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{Block, BlockTag};

    #[test]
    fn complete_graph_has_k22() {
        let e: Vec<_> = (0..3).flat_map(|p| (0..3).map(move |q| (p, q))).collect();
        assert!(!kst_free_check(3, 3, &e, 2, 2).unwrap());
        assert!(kst_free_check(3, 3, &e, 4, 1).unwrap());
        assert!(kst_free_check(3, 3, &e, 1, 4).unwrap());
    }

    #[test]
    fn caps_refuse() {
        assert!(matches!(kst_free_check(2000, 2, &[], 2, 2), Err(Error::Refused(_))));
        assert!(matches!(kst_free_check(2, 2, &[], 7, 2), Err(Error::Refused(_))));
    }

    #[test]
    fn single_block_ratio_is_exact_average() {
        let c = BicliqueCover::from_blocks(vec![Block::new(vec![0, 1, 2], vec![0, 1], BlockTag::Contains)]);
        let d = extract_dense_biclique(6, &c).unwrap();
        assert_eq!((d.ratio_num, d.ratio_den), (6, 5));
        assert!(d.meets_average);
        assert!(extract_dense_biclique(0, &BicliqueCover::empty()).is_err());
    }

    #[test]
    fn per_edge_cover_bound() {
        let c = BicliqueCover::from_blocks(vec![
            Block::new(vec![0], vec![0], BlockTag::Base),
            Block::new(vec![1], vec![1], BlockTag::Base),
        ]);
        let rep = edge_bound_check(2, &c, 1, 1);
        assert!(rep.pass);
        assert_eq!(rep.bound, 8);
        assert_eq!(extract_dense_biclique(2, &c).unwrap().ratio(), 0.5);
    }
}
