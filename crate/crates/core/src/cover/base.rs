use super::{BicliqueCover, Block, BlockTag};
use std::collections::BTreeMap;

/// Neighbourhood grouping on both sides; keeps the cheaper of the two.
///
/// Grouping `P` by identical neighbour lists gives blocks `group x N(group)`,
/// each costing at most twice its edge count, so the result costs at most `2|E|`.
pub fn base_case_cover(edges: &[(usize, usize)]) -> BicliqueCover {
    BicliqueCover::from_blocks(base_blocks(edges, BlockTag::Base))
}

pub(crate) fn base_blocks(edges: &[(usize, usize)], tag: BlockTag) -> Vec<Block> {
    let by_p = group(edges.iter().copied());
    let by_q = group(edges.iter().map(|&(p, q)| (q, p)));
    let cost = |g: &BTreeMap<Vec<usize>, Vec<usize>>| -> usize { g.iter().map(|(n, v)| n.len() + v.len()).sum() };
    if cost(&by_p) <= cost(&by_q) {
        by_p.into_iter().map(|(nb, ps)| Block::new(ps, nb, tag)).collect()
    } else {
        by_q.into_iter().map(|(nb, qs)| Block::new(nb, qs, tag)).collect()
    }
}

/// Maps each distinct neighbour list to the vertices having it.
fn group(edges: impl Iterator<Item = (usize, usize)>) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut nbhd: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (u, v) in edges {
        nbhd.entry(u).or_default().push(v);
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (u, mut vs) in nbhd {
        vs.sort_unstable();
        vs.dedup();
        groups.entry(vs).or_default().push(u);
    }
    groups
}
