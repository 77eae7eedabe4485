//! Exact minimum cover cost for tiny graphs, and a greedy baseline.

use crate::cover::{BicliqueCover, Block, BlockTag};
use crate::error::{Error, Result};
use crate::geometry::IncidenceInstance;
use std::collections::{BTreeSet, HashMap};

pub const MAX_SIDE: usize = 12;
pub const DEFAULT_EDGE_CAP: usize = 14;
/// Edge masks are `u64`, which bounds any cap.
pub const HARD_EDGE_CAP: usize = 64;
pub const MAX_BICLIQUES: usize = 10_000;

/// A bipartite graph with at most 12 vertices per side, stored as row bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    pub m: usize,
    pub n: usize,
    /// `rows[p]` has bit `q` set iff `(p, q)` is an edge.
    pub rows: Vec<u16>,
}

impl SmallGraph {
    pub fn new(m: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if m > MAX_SIDE || n > MAX_SIDE {
            return Err(Error::Refused(format!(
                "graph of {m} x {n} exceeds the {MAX_SIDE}-per-side limit"
            )));
        }
        let mut rows = vec![0u16; m];
        for &(p, q) in edges {
            if p >= m || q >= n {
                return Err(Error::contract(format!("edge ({p}, {q}) out of range")));
            }
            rows[p] |= 1 << q;
        }
        Ok(SmallGraph { m, n, rows })
    }

    pub fn from_instance(inst: &IncidenceInstance) -> Result<Self> {
        SmallGraph::new(inst.m, inst.n, &inst.edge_set())
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (p, &row) in self.rows.iter().enumerate() {
            for q in 0..self.n {
                if row >> q & 1 == 1 {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Maximal bicliques `(A mask, B mask)` with both sides nonempty, in a canonical order.
    pub fn maximal_bicliques(&self) -> Result<Vec<(u16, u16)>> {
        // Every maximal B is an intersection of row neighbourhoods; close the
        // family of nonempty rows under pairwise intersection.
        let mut closed: BTreeSet<u16> = self.rows.iter().copied().filter(|&r| r != 0).collect();
        let mut frontier: Vec<u16> = closed.iter().copied().collect();
        while let Some(b) = frontier.pop() {
            for &r in &self.rows {
                let x = b & r;
                if x != 0 && closed.insert(x) {
                    if closed.len() > MAX_BICLIQUES {
                        return Err(Error::Refused(format!(
                            "more than {MAX_BICLIQUES} maximal bicliques"
                        )));
                    }
                    frontier.push(x);
                }
            }
        }
        Ok(closed
            .into_iter()
            .map(|b| {
                let a = self
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|(_, &r)| r & b == b)
                    .fold(0u16, |acc, (p, _)| acc | 1 << p);
                (a, b)
            })
            .collect())
    }
}

fn bits(mask: u16) -> Vec<usize> {
    (0..16).filter(|&i| mask >> i & 1 == 1).collect()
}

fn block_of(a: u16, b: u16, tag: BlockTag) -> Block {
    Block::new(bits(a), bits(b), tag)
}

/// Nonempty submasks of `mask`.
fn submasks(mask: u16) -> impl Iterator<Item = u16> {
    let mut s = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = s;
        if s == 0 {
            return None;
        }
        s = (s - 1) & mask;
        if s == 0 {
            done = true;
        }
        Some(out)
    })
}

struct Candidate {
    edges: u64,
    cost: u32,
    a: u16,
    b: u16,
}

struct Search<'a> {
    cands: &'a [Candidate],
    /// Candidate indices containing each edge, cheapest per edge first.
    by_edge: Vec<Vec<usize>>,
    full: u64,
    best_ratio: f64,
    best: u32,
    best_pick: Vec<usize>,
    pick: Vec<usize>,
    seen: HashMap<u64, u32>,
}

impl Search<'_> {
    fn dfs(&mut self, covered: u64, cost: u32) {
        if covered == self.full {
            if cost < self.best {
                self.best = cost;
                self.best_pick = self.pick.clone();
            }
            return;
        }
        let remaining = (self.full & !covered).count_ones() as f64;
        let lb = (remaining / self.best_ratio - 1e-9).ceil() as u32;
        if cost + lb >= self.best {
            return;
        }
        match self.seen.get(&covered) {
            Some(&c) if c <= cost => return,
            _ => {
                self.seen.insert(covered, cost);
            }
        }
        let e = (self.full & !covered).trailing_zeros() as usize;
        for k in 0..self.by_edge[e].len() {
            let ci = self.by_edge[e][k];
            let c = &self.cands[ci];
            self.pick.push(ci);
            self.dfs(covered | c.edges, cost + c.cost);
            self.pick.pop();
        }
    }
}

/// Exact minimum of `sum(|A_i| + |B_i|)` over covers of `g` by bicliques, with a witness.
///
/// Refuses graphs with more than `edge_cap` edges rather than approximating.
pub fn min_cover_cost(g: &SmallGraph, edge_cap: usize) -> Result<(u64, BicliqueCover)> {
    let edges = g.edges();
    let cap = edge_cap.min(HARD_EDGE_CAP);
    if edges.len() > cap {
        return Err(Error::Refused(format!(
            "{} edges exceed the oracle cap of {cap}",
            edges.len()
        )));
    }
    if edges.is_empty() {
        return Ok((0, BicliqueCover::empty()));
    }
    let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_mask = |a: u16, b: u16| -> u64 {
        let mut m = 0u64;
        for p in bits(a) {
            for q in bits(b) {
                m |= 1 << index[&(p, q)];
            }
        }
        m
    };

    // Every sub-biclique of a maximal one, keyed by its edge set.
    let mut by_mask: HashMap<u64, Candidate> = HashMap::new();
    for (a, b) in g.maximal_bicliques()? {
        for sa in submasks(a) {
            for sb in submasks(b) {
                let em = edge_mask(sa, sb);
                let cost = sa.count_ones() + sb.count_ones();
                by_mask.entry(em).or_insert(Candidate { edges: em, cost, a: sa, b: sb });
            }
        }
    }
    let mut cands: Vec<Candidate> = by_mask.into_values().collect();
    // Order by edges per unit cost, then deterministically by mask.
    cands.sort_by(|x, y| {
        let lhs = y.edges.count_ones() as u64 * x.cost as u64;
        let rhs = x.edges.count_ones() as u64 * y.cost as u64;
        lhs.cmp(&rhs).then(x.edges.cmp(&y.edges))
    });
    let mut by_edge = vec![Vec::new(); edges.len()];
    for (i, c) in cands.iter().enumerate() {
        for (e, list) in by_edge.iter_mut().enumerate() {
            if c.edges >> e & 1 == 1 {
                list.push(i);
            }
        }
    }
    let best_ratio = cands
        .iter()
        .map(|c| c.edges.count_ones() as f64 / c.cost as f64)
        .fold(0.0, f64::max);
    let full = if edges.len() == 64 { u64::MAX } else { (1u64 << edges.len()) - 1 };
    let greedy = greedy_cover(g)?;
    let mut s = Search {
        cands: &cands,
        by_edge,
        full,
        best_ratio,
        best: greedy.cost_j as u32 + 1,
        best_pick: Vec::new(),
        pick: Vec::new(),
        seen: HashMap::new(),
    };
    s.dfs(0, 0);
    if s.best_pick.is_empty() {
        // The greedy cover is already optimal.
        return Ok((greedy.cost_j, greedy));
    }
    let blocks = s.best_pick.iter().map(|&i| block_of(cands[i].a, cands[i].b, BlockTag::Base)).collect();
    let cover = BicliqueCover::from_blocks(blocks);
    Ok((cover.cost_j, cover))
}

/// Repeatedly takes the maximal biclique with the most uncovered edges per unit cost.
pub fn greedy_cover(g: &SmallGraph) -> Result<BicliqueCover> {
    let bicliques = g.maximal_bicliques()?;
    let mut uncovered: Vec<u16> = g.rows.clone();
    let mut blocks = Vec::new();
    while uncovered.iter().any(|&r| r != 0) {
        let gain = |&(a, b): &(u16, u16)| -> u32 { bits(a).iter().map(|&p| (uncovered[p] & b).count_ones()).sum() };
        let mut best: Option<((u16, u16), u32)> = None;
        for bc in &bicliques {
            let gn = gain(bc);
            let cost = bc.0.count_ones() + bc.1.count_ones();
            let better = match best {
                None => gn > 0,
                Some((b0, g0)) => gn as u64 * (b0.0.count_ones() + b0.1.count_ones()) as u64 > g0 as u64 * cost as u64,
            };
            if better {
                best = Some((*bc, gn));
            }
        }
        let ((a, b), _) = best.expect("some biclique covers every remaining edge");
        for p in bits(a) {
            uncovered[p] &= !b;
        }
        blocks.push(block_of(a, b, BlockTag::Base));
    }
    Ok(BicliqueCover::from_blocks(blocks))
}
