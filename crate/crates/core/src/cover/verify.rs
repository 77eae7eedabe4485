use super::BicliqueCover;
use crate::geometry::IncidenceInstance;
use serde::Serialize;

/// Longest list of offending pairs kept in a report.
const LIST_LIMIT: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub pass: bool,
    pub edge_count: usize,
    pub block_count: usize,
    pub missing_count: usize,
    pub spurious_count: usize,
    /// First missing edges, `(p, q)`.
    pub missing: Vec<(usize, usize)>,
    /// First covered pairs that are not edges.
    pub spurious: Vec<(usize, usize)>,
    pub cost_stored: u64,
    pub cost_recomputed: u64,
    pub cost_mismatch: bool,
    /// Indices of blocks with an empty side.
    pub empty_blocks: Vec<usize>,
    /// Indices of blocks naming a vertex outside the instance.
    pub out_of_range: Vec<usize>,
    pub problems: Vec<String>,
}

/// Checks that the blocks cover exactly the instance's edges and that the cost adds up.
pub fn verify_cover(inst: &IncidenceInstance, cover: &BicliqueCover) -> VerificationReport {
    let edges = inst.edge_set();
    let mut covered = vec![false; edges.len()];
    let mut spurious = Vec::new();
    let mut empty_blocks = Vec::new();
    let mut out_of_range = Vec::new();
    for (i, b) in cover.blocks.iter().enumerate() {
        if b.a.is_empty() || b.b.is_empty() {
            empty_blocks.push(i);
        }
        if b.a.iter().any(|&p| p >= inst.m) || b.b.iter().any(|&q| q >= inst.n) {
            out_of_range.push(i);
        }
        for &p in &b.a {
            for &q in &b.b {
                match edges.binary_search(&(p, q)) {
                    Ok(k) => covered[k] = true,
                    Err(_) => spurious.push((p, q)),
                }
            }
        }
    }
    spurious.sort_unstable();
    spurious.dedup();
    let missing: Vec<(usize, usize)> =
        edges.iter().zip(&covered).filter(|(_, &c)| !c).map(|(e, _)| *e).collect();
    let cost_recomputed = cover.recomputed_cost();
    let cost_mismatch = cost_recomputed != cover.cost_j;

    let mut problems = Vec::new();
    if !missing.is_empty() {
        problems.push(format!("{} missing edges, first {:?}", missing.len(), missing[0]));
    }
    if !spurious.is_empty() {
        problems.push(format!("{} spurious pairs, first {:?}", spurious.len(), spurious[0]));
    }
    if cost_mismatch {
        problems.push(format!(
            "cost mismatch: stored {}, recomputed {}",
            cover.cost_j, cost_recomputed
        ));
    }
    if !empty_blocks.is_empty() {
        problems.push(format!("{} blocks with an empty side", empty_blocks.len()));
    }
    if !out_of_range.is_empty() {
        problems.push(format!("{} blocks with out-of-range indices", out_of_range.len()));
    }
    VerificationReport {
        pass: problems.is_empty(),
        edge_count: edges.len(),
        block_count: cover.blocks.len(),
        missing_count: missing.len(),
        spurious_count: spurious.len(),
        missing: missing.into_iter().take(LIST_LIMIT).collect(),
        spurious: spurious.into_iter().take(LIST_LIMIT).collect(),
        cost_stored: cover.cost_j,
        cost_recomputed,
        cost_mismatch,
        empty_blocks,
        out_of_range,
        problems,
    }
}
