use super::{BicliqueCover, Block};
use std::collections::{BTreeMap, HashMap};

/// Merges blocks sharing an identical side and drops blocks contained in
/// another, repeating until nothing changes. Never increases the cost and
/// never changes the set of covered pairs.
pub fn merge_pass(cover: &BicliqueCover) -> BicliqueCover {
    let mut blocks = cover.blocks.clone();
    loop {
        let before = blocks.len();
        blocks = merge_on(blocks, |b| &b.a, |keep, other| keep.b.extend_from_slice(&other.b));
        blocks = merge_on(blocks, |b| &b.b, |keep, other| keep.a.extend_from_slice(&other.a));
        blocks = drop_subsumed(blocks);
        if blocks.len() == before {
            break;
        }
    }
    BicliqueCover::from_blocks(blocks)
}

fn merge_on(
    blocks: Vec<Block>,
    key: impl Fn(&Block) -> &Vec<usize>,
    absorb: impl Fn(&mut Block, &Block),
) -> Vec<Block> {
    let mut groups: BTreeMap<Vec<usize>, Block> = BTreeMap::new();
    let mut order = Vec::new();
    for b in blocks {
        let k = key(&b).clone();
        match groups.get_mut(&k) {
            Some(keep) => absorb(keep, &b),
            None => {
                order.push(k.clone());
                groups.insert(k, b);
            }
        }
    }
    order
        .into_iter()
        .map(|k| {
            let b = groups.remove(&k).expect("grouped block");
            Block::new(b.a, b.b, b.tag)
        })
        .collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Removes every block whose `A x B` lies inside another block's.
fn drop_subsumed(blocks: Vec<Block>) -> Vec<Block> {
    let mut by_p: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for &p in &b.a {
            by_p.entry(p).or_default().push(i);
        }
    }
    let mut dead = vec![false; blocks.len()];
    for (i, b) in blocks.iter().enumerate() {
        let Some(&p0) = b.a.first() else { continue };
        for &j in &by_p[&p0] {
            if j == i || dead[j] {
                continue;
            }
            let o = &blocks[j];
            if is_subset(&b.a, &o.a) && is_subset(&b.b, &o.b) {
                // Of two identical blocks keep the first.
                if b.a.len() == o.a.len() && b.b.len() == o.b.len() && i < j {
                    continue;
                }
                dead[i] = true;
                break;
            }
        }
    }
    blocks.into_iter().zip(dead).filter(|(_, d)| !d).map(|(b, _)| b).collect()
}
