//! k-partite hypergraphs: exact hyperedge enumeration, grid-partition covers,
//! the hypergraph cost and forbidden complete k-partite subgraphs.
//!
//! A block is a tuple of index lists `(A_1, ..., A_k)` standing for the product
//! `A_1 x ... x A_k`. Its cost is `sum_j prod_{l != j} |A_l|`, which equals
//! `prod |A_l| * sum 1/|A_j|` and reduces to `|A| + |B|` for two parts.

use crate::cover::BlockTag;
use crate::error::{Error, Result};
use crate::geometry::{AtomSign, Formula, Point, Polynomial, SignSet, Tri};
use crate::partition::{partition_subset, BoxN, CellPartition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest `prod n_i` enumerated directly.
pub const MAX_TUPLES: usize = 1_000_000;
pub const KUUU_MAX_SIDE: usize = 60;
pub const KUUU_MAX_U: usize = 3;
pub const HYPER_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Relation {
    /// A sign condition over the concatenated coordinates of one point per part.
    Generic(SignSet),
    /// Hyperedges as index tuples.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct KPartiteInstance {
    pub sizes: Vec<usize>,
    /// Point dimension per part; empty in explicit mode.
    pub dims: Vec<usize>,
    /// Points per part; empty in explicit mode.
    pub parts: Vec<Vec<Point>>,
    pub relation: Relation,
}

impl KPartiteInstance {
    pub fn geometric(parts: Vec<Vec<Point>>, dims: Vec<usize>, relation: SignSet) -> Result<Self> {
        if parts.len() < 2 || parts.len() != dims.len() {
            return Err(Error::invalid("need at least two parts, each with a dimension"));
        }
        for (i, (pts, &d)) in parts.iter().zip(&dims).enumerate() {
            if d == 0 {
                return Err(Error::invalid(format!("part {i} has dimension 0")));
            }
            if pts.iter().any(|p| p.dim() != d) {
                return Err(Error::invalid(format!("part {i} has points not of dimension {d}")));
            }
        }
        let total: usize = dims.iter().sum();
        if relation.dim != total {
            return Err(Error::invalid(format!(
                "relation is over R^{} but the parts span R^{total}",
                relation.dim
            )));
        }
        Ok(KPartiteInstance {
            sizes: parts.iter().map(Vec::len).collect(),
            dims,
            parts,
            relation: Relation::Generic(relation),
        })
    }

    pub fn explicit(sizes: Vec<usize>, edges: Vec<Vec<usize>>) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::invalid("need at least two parts"));
        }
        for e in &edges {
            if e.len() != sizes.len() || e.iter().zip(&sizes).any(|(&x, &n)| x >= n) {
                return Err(Error::invalid(format!("hyperedge {e:?} does not fit sizes {sizes:?}")));
            }
        }
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        Ok(KPartiteInstance { sizes, dims: Vec::new(), parts: Vec::new(), relation: Relation::Explicit(edges) })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    fn tuple_coords(&self, t: &[usize]) -> Vec<f64> {
        t.iter().enumerate().flat_map(|(i, &x)| self.parts[i][x].coords().iter().copied()).collect()
    }

    pub fn has_edge(&self, t: &[usize]) -> bool {
        match &self.relation {
            Relation::Explicit(e) => e.binary_search_by(|x| x.as_slice().cmp(t)).is_ok(),
            Relation::Generic(s) => s.contains_exact(&self.tuple_coords(t)),
        }
    }
}

/// Calls `f` on every tuple of the product, in lexicographic order.
fn for_each_tuple(lists: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    let mut pos = vec![0; lists.len()];
    let mut t: Vec<usize> = lists.iter().map(|l| l[0]).collect();
    loop {
        f(&t);
        let mut i = lists.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < lists[i].len() {
                t[i] = lists[i][pos[i]];
                break;
            }
            pos[i] = 0;
            t[i] = lists[i][0];
        }
    }
}

fn tuple_count(sizes: &[usize]) -> Option<usize> {
    sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n))
}

/// All hyperedges, sorted lexicographically.
pub fn hyper_edge_set(inst: &KPartiteInstance) -> Result<Vec<Vec<usize>>> {
    match &inst.relation {
        Relation::Explicit(e) => Ok(e.clone()),
        Relation::Generic(_) => {
            match tuple_count(&inst.sizes) {
                Some(c) if c <= MAX_TUPLES => {}
                _ => {
                    return Err(Error::Refused(format!(
                        "{:?} parts exceed the enumeration cap of {MAX_TUPLES} tuples",
                        inst.sizes
                    )))
                }
            }
            let lists: Vec<Vec<usize>> = inst.sizes.iter().map(|&n| (0..n).collect()).collect();
            let mut out = Vec::new();
            for_each_tuple(&lists, |t| {
                if inst.has_edge(t) {
                    out.push(t.to_vec());
                }
            });
            Ok(out)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperBlock {
    pub parts: Vec<Vec<usize>>,
    pub tag: BlockTag,
}

impl HyperBlock {
    pub fn new(parts: Vec<Vec<usize>>, tag: BlockTag) -> Self {
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        HyperBlock { parts, tag }
    }

    /// `sum_j prod_{l != j} |A_l|`; `None` if a part is empty.
    pub fn cost(&self) -> Option<u64> {
        if self.parts.iter().any(Vec::is_empty) {
            return None;
        }
        let sizes: Vec<u64> = self.parts.iter().map(|p| p.len() as u64).collect();
        Some(
            (0..sizes.len())
                .map(|j| sizes.iter().enumerate().filter(|&(l, _)| l != j).map(|(_, s)| s).product::<u64>())
                .sum(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCover {
    pub k: usize,
    pub blocks: Vec<HyperBlock>,
    pub cost: u64,
}

#[derive(Serialize, Deserialize)]
struct HyperCoverDoc {
    #[serde(rename = "schemaVersion", default, skip_serializing_if = "Option::is_none")]
    schema_version: Option<u32>,
    k: usize,
    blocks: Vec<HyperBlock>,
    cost: u64,
}

impl HyperCover {
    pub fn from_blocks(k: usize, blocks: Vec<HyperBlock>) -> Self {
        let mut blocks: Vec<HyperBlock> =
            blocks.into_iter().filter(|b| b.parts.iter().all(|p| !p.is_empty())).collect();
        blocks.sort_by(|x, y| {
            let kx: Vec<usize> = x.parts.iter().map(|p| p[0]).collect();
            let ky: Vec<usize> = y.parts.iter().map(|p| p[0]).collect();
            kx.cmp(&ky).then_with(|| x.parts.cmp(&y.parts)).then_with(|| x.tag.cmp(&y.tag))
        });
        let cost = blocks.iter().filter_map(HyperBlock::cost).sum();
        HyperCover { k, blocks, cost }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&HyperCoverDoc {
            schema_version: Some(HYPER_SCHEMA_VERSION),
            k: self.k,
            blocks: self.blocks.clone(),
            cost: self.cost,
        })
        .expect("hyper cover serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: HyperCoverDoc = serde_json::from_str(s)?;
        if doc.schema_version.is_some_and(|v| v != HYPER_SCHEMA_VERSION) {
            return Err(Error::invalid("unsupported hyper cover schemaVersion"));
        }
        Ok(HyperCover { k: doc.k, blocks: doc.blocks, cost: doc.cost })
    }
}

/// Recomputes the cost from the blocks.
pub fn hyper_cost(cover: &HyperCover) -> Result<u64> {
    cover
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| b.cost().ok_or_else(|| Error::contract(format!("block {i} has an empty part"))))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct HyperConfig {
    pub r: usize,
    /// Subproblems with at most this many points in total go to the base case.
    pub base_threshold: usize,
    pub max_depth: usize,
}

impl Default for HyperConfig {
    fn default() -> Self {
        HyperConfig { r: 2, base_threshold: 12, max_depth: 64 }
    }
}

impl HyperConfig {
    pub fn validate(&self) -> Result<()> {
        if self.r < 2 || self.base_threshold < 4 || self.max_depth < 1 {
            return Err(Error::invalid("hyper config needs r >= 2, baseThreshold >= 4, maxDepth >= 1"));
        }
        Ok(())
    }
}

struct HyperBuilder<'a> {
    inst: &'a KPartiteInstance,
    set: &'a SignSet,
    cfg: &'a HyperConfig,
}

impl HyperBuilder<'_> {
    /// Groups the hyperedges of the sub-grid by the tuple of the other parts.
    fn base(&self, lists: &[Vec<usize>], tag: BlockTag) -> Vec<HyperBlock> {
        let mut edges = Vec::new();
        for_each_tuple(lists, |t| {
            if self.inst.has_edge(t) {
                edges.push(t.to_vec());
            }
        });
        let tag = if tag == BlockTag::Boundary { tag } else { BlockTag::Base };
        base_hyper_blocks(&edges, lists.len(), tag)
    }

    /// Truth of the relation over the product of `boxes`, with part `j` fixed at point `x`.
    fn truth(&self, boxes: &[Option<BoxN>], j: usize, x: usize) -> Tri {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for (l, b) in boxes.iter().enumerate() {
            if l == j {
                let c = self.inst.parts[j][x].coords();
                lo.extend_from_slice(c);
                hi.extend_from_slice(c);
            } else {
                let b = b.as_ref().expect("box for every other part");
                lo.extend_from_slice(&b.lo);
                hi.extend_from_slice(&b.hi);
            }
        }
        self.set.truth_over(&lo, &hi)
    }

    fn boxes_of(&self, lists: &[Vec<usize>], j: usize) -> Vec<Option<BoxN>> {
        lists
            .iter()
            .enumerate()
            .map(|(l, idx)| if l == j { None } else { BoxN::bounding(&self.inst.parts[l], idx) })
            .collect()
    }

    fn solve(&self, lists: Vec<Vec<usize>>, depth: usize, tag: BlockTag) -> Vec<HyperBlock> {
        if lists.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        if depth >= self.cfg.max_depth {
            return self.base(&lists, tag);
        }
        let j = widest(&lists);
        let ctag = if tag == BlockTag::Boundary { tag } else { BlockTag::Contains };
        let mut out = Vec::new();

        let (inside, crossing) = self.split(&lists, j, &lists[j]);
        if !inside.is_empty() {
            let mut parts = lists.clone();
            parts[j] = inside;
            out.push(HyperBlock::new(parts, ctag));
        }
        if crossing.is_empty() {
            return out;
        }
        let total: usize = lists.iter().map(Vec::len).sum::<usize>() - lists[j].len() + crossing.len();
        if total <= self.cfg.base_threshold {
            let mut rest = lists.clone();
            rest[j] = crossing;
            out.extend(self.base(&rest, tag));
            return out;
        }

        let mut parts: Vec<Option<CellPartition>> = Vec::with_capacity(lists.len());
        for (l, idx) in lists.iter().enumerate() {
            if l == j {
                parts.push(None);
            } else {
                match partition_subset(&self.inst.parts[l], idx, self.cfg.r) {
                    Ok(p) => parts.push(Some(p)),
                    Err(_) => {
                        let mut rest = lists.clone();
                        rest[j] = crossing;
                        out.extend(self.base(&rest, tag));
                        return out;
                    }
                }
            }
        }
        if parts.iter().flatten().all(|p| p.cuts.is_empty()) {
            let mut rest = lists.clone();
            rest[j] = crossing;
            out.extend(self.base(&rest, tag));
            return out;
        }

        // Product cells.
        let cell_lists: Vec<Vec<usize>> = parts
            .iter()
            .map(|p| match p {
                Some(p) => (0..p.cells.len()).collect(),
                None => vec![0],
            })
            .collect();
        let mut subproblems = Vec::new();
        for_each_tuple(&cell_lists, |cells| {
            let mut sub: Vec<Vec<usize>> = Vec::with_capacity(lists.len());
            for (l, p) in parts.iter().enumerate() {
                sub.push(match p {
                    Some(p) => p.cells[cells[l]].point_idxs.clone(),
                    None => Vec::new(),
                });
            }
            let (inside, cross) = self.split(&sub, j, &crossing);
            if !inside.is_empty() {
                let mut b = sub.clone();
                b[j] = inside;
                out.push(HyperBlock::new(b, ctag));
            }
            if !cross.is_empty() {
                sub[j] = cross;
                subproblems.push((sub, tag));
            }
        });

        // Tuples with a point on a cut: split by the first part whose point is on one.
        for (l, p) in parts.iter().enumerate() {
            let Some(p) = p else { continue };
            for g in &p.boundary {
                let mut sub = Vec::with_capacity(lists.len());
                for (l2, p2) in parts.iter().enumerate() {
                    sub.push(if l2 == j {
                        crossing.clone()
                    } else if l2 == l {
                        g.point_idxs.clone()
                    } else if l2 < l {
                        let mut inner: Vec<usize> =
                            p2.as_ref().expect("partitioned").cells.iter().flat_map(|c| c.point_idxs.iter().copied()).collect();
                        inner.sort_unstable();
                        inner
                    } else {
                        lists[l2].clone()
                    });
                }
                subproblems.push((sub, BlockTag::Boundary));
            }
        }
        for (sub, t) in subproblems {
            out.extend(self.solve(sub, depth + 1, t));
        }
        out
    }

    /// Splits candidates of part `j` into those whose sets contain the product box and those crossing it.
    fn split(&self, lists: &[Vec<usize>], j: usize, cands: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let boxes = self.boxes_of(lists, j);
        if boxes.iter().enumerate().any(|(l, b)| l != j && b.is_none()) {
            return (Vec::new(), Vec::new());
        }
        let mut inside = Vec::new();
        let mut crossing = Vec::new();
        for &x in cands {
            match self.truth(&boxes, j, x) {
                Tri::True => inside.push(x),
                Tri::Unknown => crossing.push(x),
                Tri::False => {}
            }
        }
        (inside, crossing)
    }
}

/// Groups hyperedges agreeing outside one part into a block, using the part
/// that gives the cheapest result. Never costs more than `k` per hyperedge.
fn base_hyper_blocks(edges: &[Vec<usize>], k: usize, tag: BlockTag) -> Vec<HyperBlock> {
    let mut best: Option<(u64, Vec<HyperBlock>)> = None;
    for j in 0..k {
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for e in edges {
            let mut rest = e.clone();
            let x = rest.remove(j);
            groups.entry(rest).or_default().push(x);
        }
        let blocks: Vec<HyperBlock> = groups
            .into_iter()
            .map(|(rest, xs)| {
                let mut parts: Vec<Vec<usize>> = rest.into_iter().map(|v| vec![v]).collect();
                parts.insert(j, xs);
                HyperBlock::new(parts, tag)
            })
            .collect();
        let cost: u64 = blocks.iter().filter_map(HyperBlock::cost).sum();
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, blocks));
        }
    }
    best.map(|(_, b)| b).unwrap_or_default()
}

/// Merges blocks that agree in every part but one, to a fixpoint. The covered
/// tuples stay the same and the cost never goes up.
pub fn merge_hyper_pass(cover: &HyperCover) -> HyperCover {
    let mut blocks = cover.blocks.clone();
    loop {
        let before = blocks.len();
        for j in 0..cover.k {
            let mut groups: BTreeMap<Vec<Vec<usize>>, HyperBlock> = BTreeMap::new();
            let mut order = Vec::new();
            for b in blocks {
                let mut key = b.parts.clone();
                key[j] = Vec::new();
                match groups.get_mut(&key) {
                    Some(keep) => keep.parts[j].extend_from_slice(&b.parts[j]),
                    None => {
                        order.push(key.clone());
                        groups.insert(key, b);
                    }
                }
            }
            blocks = order
                .into_iter()
                .map(|k| {
                    let b = groups.remove(&k).expect("grouped block");
                    HyperBlock::new(b.parts, b.tag)
                })
                .collect();
        }
        if blocks.len() == before {
            break;
        }
    }
    HyperCover::from_blocks(cover.k, blocks)
}

/// Index of the longest list; ties go to the lowest index.
fn widest(lists: &[Vec<usize>]) -> usize {
    let mut best = 0;
    for (i, l) in lists.iter().enumerate() {
        if l.len() > lists[best].len() {
            best = i;
        }
    }
    best
}

/// Builds a cover of the hyperedges. Explicit instances get one block per hyperedge.
pub fn build_hyper_cover(inst: &KPartiteInstance, cfg: &HyperConfig) -> Result<HyperCover> {
    cfg.validate()?;
    let k = inst.k();
    match &inst.relation {
        Relation::Explicit(edges) => Ok(HyperCover::from_blocks(
            k,
            edges
                .iter()
                .map(|e| HyperBlock::new(e.iter().map(|&x| vec![x]).collect(), BlockTag::Base))
                .collect(),
        )),
        Relation::Generic(set) => {
            let b = HyperBuilder { inst, set, cfg };
            let lists = inst.sizes.iter().map(|&n| (0..n).collect()).collect();
            Ok(HyperCover::from_blocks(k, b.solve(lists, 0, BlockTag::Contains)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HyperVerificationReport {
    pub pass: bool,
    pub edge_count: usize,
    pub block_count: usize,
    pub missing_count: usize,
    pub spurious_count: usize,
    pub missing: Vec<Vec<usize>>,
    pub spurious: Vec<Vec<usize>>,
    pub cost_stored: u64,
    pub cost_recomputed: u64,
    pub cost_mismatch: bool,
    /// Blocks with an empty part, the wrong arity, or an out-of-range index.
    pub malformed_blocks: Vec<usize>,
    pub problems: Vec<String>,
}

pub fn verify_hyper_cover(inst: &KPartiteInstance, cover: &HyperCover) -> Result<HyperVerificationReport> {
    let edges = hyper_edge_set(inst)?;
    let mut covered = vec![false; edges.len()];
    let mut spurious = Vec::new();
    let mut malformed = Vec::new();
    let mut cost_recomputed = 0;
    for (i, b) in cover.blocks.iter().enumerate() {
        let fits = b.parts.len() == inst.k()
            && b.parts.iter().zip(&inst.sizes).all(|(p, &n)| !p.is_empty() && p.iter().all(|&x| x < n));
        if !fits {
            malformed.push(i);
            continue;
        }
        cost_recomputed += b.cost().unwrap_or(0);
        for_each_tuple(&b.parts, |t| match edges.binary_search_by(|e| e.as_slice().cmp(t)) {
            Ok(k) => covered[k] = true,
            Err(_) => spurious.push(t.to_vec()),
        });
    }
    spurious.sort_unstable();
    spurious.dedup();
    let missing: Vec<Vec<usize>> = edges.iter().zip(&covered).filter(|(_, &c)| !c).map(|(e, _)| e.clone()).collect();
    let cost_mismatch = cost_recomputed != cover.cost;
    let mut problems = Vec::new();
    if !missing.is_empty() {
        problems.push(format!("{} missing hyperedges, first {:?}", missing.len(), missing[0]));
    }
    if !spurious.is_empty() {
        problems.push(format!("{} spurious tuples, first {:?}", spurious.len(), spurious[0]));
    }
    if cost_mismatch {
        problems.push(format!("cost mismatch: stored {}, recomputed {}", cover.cost, cost_recomputed));
    }
    if !malformed.is_empty() {
        problems.push(format!("{} malformed blocks", malformed.len()));
    }
    Ok(HyperVerificationReport {
        pass: problems.is_empty(),
        edge_count: edges.len(),
        block_count: cover.blocks.len(),
        missing_count: missing.len(),
        spurious_count: spurious.len(),
        missing: missing.into_iter().take(100).collect(),
        spurious: spurious.into_iter().take(100).collect(),
        cost_stored: cover.cost,
        cost_recomputed,
        cost_mismatch,
        malformed_blocks: malformed,
        problems,
    })
}

/// True iff no `u`-subsets `S_1, ..., S_k` have `S_1 x ... x S_k` inside the hyperedges.
pub fn kuuu_free_check(inst: &KPartiteInstance, u: usize) -> Result<bool> {
    if u == 0 || u > KUUU_MAX_U {
        return Err(Error::Refused(format!("u must lie in 1..={KUUU_MAX_U}, got {u}")));
    }
    if inst.sizes.iter().any(|&n| n > KUUU_MAX_SIDE) {
        return Err(Error::Refused(format!("parts larger than {KUUU_MAX_SIDE} are not searched")));
    }
    Ok(!contains_complete(&hyper_edge_set(inst)?, u))
}

/// Whether the sorted tuples contain a complete `u x ... x u` product.
fn contains_complete(edges: &[Vec<usize>], u: usize) -> bool {
    let Some(first) = edges.first() else { return false };
    if first.len() == 1 {
        return edges.len() >= u;
    }
    let mut links: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for e in edges {
        links.entry(e[0]).or_default().push(e[1..].to_vec());
    }
    let need = u.pow(first.len() as u32 - 1);
    let cand: Vec<&Vec<Vec<usize>>> = links.values().filter(|l| l.len() >= need).collect();
    choose(&cand, 0, u, None, need, u)
}

fn choose(cand: &[&Vec<Vec<usize>>], from: usize, left: usize, acc: Option<Vec<Vec<usize>>>, need: usize, u: usize) -> bool {
    if left == 0 {
        return contains_complete(acc.as_deref().unwrap_or(&[]), u);
    }
    for i in from..cand.len() {
        if cand.len() - i < left {
            break;
        }
        let next = match &acc {
            None => cand[i].clone(),
            Some(a) => intersect(a, cand[i]),
        };
        if next.len() >= need && choose(cand, i + 1, left - 1, Some(next), need, u) {
            return true;
        }
    }
    false
}

fn intersect(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The orientation of three plane points: `(x2-x1)(y3-y1) - (y2-y1)(x3-x1)`,
/// as a polynomial over `(x1, y1, x2, y2, x3, y3)`.
pub fn orientation_poly() -> Polynomial {
    let t = |e: [u32; 6], c: f64| (e.to_vec(), c);
    Polynomial::new(
        6,
        [
            t([0, 0, 1, 0, 0, 1], 1.0),
            t([0, 1, 1, 0, 0, 0], -1.0),
            t([1, 0, 0, 0, 0, 1], -1.0),
            t([0, 0, 0, 1, 1, 0], -1.0),
            t([1, 0, 0, 1, 0, 0], 1.0),
            t([0, 1, 0, 0, 1, 0], 1.0),
        ],
    )
    .expect("valid polynomial")
}

/// Triples with non-negative orientation.
pub fn orientation_relation() -> SignSet {
    SignSet::new(6, vec![orientation_poly()], Formula::atom(0, AtomSign::Nonneg)).expect("valid relation")
}

/// Collinear triples.
pub fn collinear_relation() -> SignSet {
    let f = orientation_poly();
    let g = f.negated();
    SignSet::new(
        6,
        vec![f, g],
        Formula::And(vec![Formula::atom(0, AtomSign::Nonneg), Formula::atom(1, AtomSign::Nonneg)]),
    )
    .expect("valid relation")
}

fn random_plane_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    (0..n).map(|_| Point::new(vec![rng.random(), rng.random()]).expect("finite")).collect()
}

/// Three parts of `n` uniform points in the unit square under the orientation relation.
pub fn gen_hyper_orientation(n: usize, seed: u64) -> Result<KPartiteInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts = (0..3).map(|_| random_plane_points(&mut rng, n)).collect();
    KPartiteInstance::geometric(parts, vec![2, 2, 2], orientation_relation())
}

/// Three parts of `n` integer points in `[0, 1000]^2` under collinearity, where
/// triple `i` is made collinear (`c_i = 2 b_i - a_i`) for `i < planted`.
pub fn gen_hyper_collinear(n: usize, planted: usize, seed: u64) -> Result<KPartiteInstance> {
    if planted > n {
        return Err(Error::invalid("cannot plant more triples than points per part"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let int_pt = |rng: &mut ChaCha8Rng| [rng.random_range(0..=1000i64), rng.random_range(0..=1000i64)];
    let a: Vec<[i64; 2]> = (0..n).map(|_| int_pt(&mut rng)).collect();
    let b: Vec<[i64; 2]> = (0..n).map(|_| int_pt(&mut rng)).collect();
    let c: Vec<[i64; 2]> = (0..n)
        .map(|i| if i < planted { [2 * b[i][0] - a[i][0], 2 * b[i][1] - a[i][1]] } else { int_pt(&mut rng) })
        .collect();
    let to_pts = |v: &[[i64; 2]]| -> Vec<Point> {
        v.iter().map(|p| Point::new(vec![p[0] as f64, p[1] as f64]).expect("finite")).collect()
    };
    KPartiteInstance::geometric(vec![to_pts(&a), to_pts(&b), to_pts(&c)], vec![2, 2, 2], collinear_relation())
}
