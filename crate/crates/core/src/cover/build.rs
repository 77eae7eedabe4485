//! The recursive construction.
//!
//! A subproblem is a pair `(ps, qs)` of index lists. One side is chosen and its
//! points are partitioned; the other side's neighbour sets are classified
//! against each cell. A set containing a cell contributes one block with all
//! of that cell's points, a set crossing it is passed down with the cell, and
//! points on cuts form their own subproblems, in which the cut axis is no
//! longer free. Each child has strictly fewer points on the partitioned side
//! and no more on the other, so the recursion terminates.

use super::base::base_blocks;
use super::{BicliqueCover, Block, BlockTag, CoverConfig, SideRule};
use crate::error::{Error, Result};
use crate::geometry::{IncidenceInstance, SideView};
use crate::partition::{classify, partition_subset, BoxN, CellRelation, Cut};
use rayon::prelude::*;

/// Subproblems with at least this many point-set pairs are split across threads.
const PAR_WORK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Partition the points of `P`; classify the sets of `Q`.
    P,
    /// Partition the points of `Q`; classify the sets of `P`.
    Q,
}

struct Builder<'a> {
    inst: &'a IncidenceInstance,
    cfg: &'a CoverConfig,
}

struct Task {
    ps: Vec<usize>,
    qs: Vec<usize>,
    depth: usize,
    tag: BlockTag,
    forced: Option<Side>,
}

impl Builder<'_> {
    fn view(&self, side: Side) -> Option<&SideView> {
        match side {
            Side::P => self.inst.p_view(),
            Side::Q => self.inst.q_view(),
        }
    }

    fn preference(&self, m: usize, n: usize) -> [Side; 2] {
        let larger_first = if n > m { [Side::Q, Side::P] } else { [Side::P, Side::Q] };
        match self.cfg.side_rule {
            SideRule::Auto => larger_first,
            SideRule::AlwaysP => [Side::P, Side::Q],
            SideRule::AlwaysQ => [Side::Q, Side::P],
            SideRule::Regime => {
                let (mf, nf) = (m as f64, n as f64);
                if self.inst.d2 > 0 && nf >= mf.powi(self.inst.d2 as i32) {
                    [Side::Q, Side::P]
                } else if self.inst.d1 > 0 && mf >= nf.powi(self.inst.d1 as i32) {
                    [Side::P, Side::Q]
                } else {
                    larger_first
                }
            }
        }
    }

    fn base(&self, ps: &[usize], qs: &[usize], tag: BlockTag) -> Vec<Block> {
        let tag = if tag == BlockTag::Boundary { tag } else { BlockTag::Base };
        base_blocks(&self.inst.edges_between(ps, qs), tag)
    }

    fn solve(&self, t: Task) -> Vec<Block> {
        if t.ps.is_empty() || t.qs.is_empty() {
            return Vec::new();
        }
        if t.depth >= self.cfg.max_depth || t.ps.len() + t.qs.len() <= self.cfg.base_threshold {
            return self.base(&t.ps, &t.qs, t.tag);
        }
        let order = match t.forced {
            Some(Side::P) => [Side::P, Side::Q],
            Some(Side::Q) => [Side::Q, Side::P],
            None => self.preference(t.ps.len(), t.qs.len()),
        };
        for side in order {
            if let Some(out) = self.try_side(&t, side) {
                return out;
            }
        }
        self.base(&t.ps, &t.qs, t.tag)
    }

    /// One level of partitioning on `side`; `None` when that side cannot make progress.
    fn try_side(&self, t: &Task, side: Side) -> Option<Vec<Block>> {
        let view = self.view(side)?;
        let (pts, sets) = match side {
            Side::P => (&t.ps, &t.qs),
            Side::Q => (&t.qs, &t.ps),
        };
        let block = |cell_pts: Vec<usize>, containing: Vec<usize>, tag: BlockTag| match side {
            Side::P => Block::new(cell_pts, containing, tag),
            Side::Q => Block::new(containing, cell_pts, tag),
        };
        let tag = if t.tag == BlockTag::Boundary { BlockTag::Boundary } else { BlockTag::Contains };

        let mut out = Vec::new();
        let root = BoxN::bounding(&view.points, pts)?;
        let (inside, crossing) = split_sets(view, sets, &root);
        if !inside.is_empty() {
            out.push(block(pts.clone(), inside, tag));
        }
        if crossing.is_empty() {
            return Some(out);
        }
        let part = partition_subset(&view.points, pts, self.cfg.r).ok()?;
        if part.cuts.is_empty() {
            // No free axis to cut; the other side may still split.
            if !out.is_empty() {
                let rest = self.solve_forced_other(t, side, crossing);
                out.extend(rest);
                return Some(out);
            }
            return None;
        }

        let mut tasks = Vec::new();
        for cell in &part.cells {
            let bx = BoxN::bounding(&view.points, &cell.point_idxs).expect("nonempty cell");
            let (inside, cell_crossing) = split_sets(view, &crossing, &bx);
            if !inside.is_empty() {
                out.push(block(cell.point_idxs.clone(), inside, tag));
            }
            if !cell_crossing.is_empty() {
                tasks.push(self.child(side, cell.point_idxs.clone(), cell_crossing, t.depth + 1, t.tag, None));
            }
        }
        for g in &part.boundary {
            tasks.push(self.child(side, g.point_idxs.clone(), crossing.clone(), t.depth + 1, BlockTag::Boundary, Some(side)));
        }
        out.extend(self.run(tasks));
        Some(out)
    }

    /// The chosen side had no free axis but root classification removed some sets.
    fn solve_forced_other(&self, t: &Task, side: Side, crossing: Vec<usize>) -> Vec<Block> {
        let pts = match side {
            Side::P => t.ps.clone(),
            Side::Q => t.qs.clone(),
        };
        let other = match side {
            Side::P => Side::Q,
            Side::Q => Side::P,
        };
        let task = self.child(side, pts, crossing, t.depth + 1, t.tag, Some(other));
        self.solve(task)
    }

    fn child(&self, side: Side, pts: Vec<usize>, sets: Vec<usize>, depth: usize, tag: BlockTag, forced: Option<Side>) -> Task {
        let (ps, qs) = match side {
            Side::P => (pts, sets),
            Side::Q => (sets, pts),
        };
        Task { ps, qs, depth, tag, forced }
    }

    fn run(&self, tasks: Vec<Task>) -> Vec<Block> {
        let work: usize = tasks.iter().map(|t| t.ps.len() * t.qs.len()).sum();
        if work >= PAR_WORK && tasks.len() > 1 {
            tasks.into_par_iter().map(|t| self.solve(t)).flatten().collect()
        } else {
            tasks.into_iter().flat_map(|t| self.solve(t)).collect()
        }
    }
}

/// Splits `sets` into those containing the box and those crossing it; disjoint ones are dropped.
fn split_sets(view: &SideView, sets: &[usize], bx: &BoxN) -> (Vec<usize>, Vec<usize>) {
    let mut inside = Vec::new();
    let mut crossing = Vec::new();
    for &s in sets {
        match classify(&view.sets[s], bx) {
            CellRelation::Contains => inside.push(s),
            CellRelation::Crosses => crossing.push(s),
            CellRelation::Disjoint => {}
        }
    }
    (inside, crossing)
}

/// Builds a cover of the instance's edge set.
///
/// Explicit instances go straight to the neighbourhood-grouping base case.
pub fn build_cover(inst: &IncidenceInstance, cfg: &CoverConfig) -> Result<BicliqueCover> {
    cfg.validate()?;
    if inst.is_explicit() {
        return Ok(BicliqueCover::from_blocks(base_blocks(&inst.edge_set(), BlockTag::Base)));
    }
    let b = Builder { inst, cfg };
    let blocks = b.solve(Task {
        ps: (0..inst.m).collect(),
        qs: (0..inst.n).collect(),
        depth: 0,
        tag: BlockTag::Contains,
        forced: None,
    });
    Ok(BicliqueCover::from_blocks(blocks))
}

/// Like [`build_cover`] but always partitions the space of `Q`'s points.
pub fn stage1_cover(inst: &IncidenceInstance, cfg: &CoverConfig) -> Result<BicliqueCover> {
    if inst.q_view().is_none() {
        return Err(Error::invalid("instance has no Q-side view to partition"));
    }
    let cfg = CoverConfig { side_rule: SideRule::AlwaysQ, ..cfg.clone() };
    build_cover(inst, &cfg)
}

/// Covers the edges between `sets` and points lying on `cut`, partitioning
/// `side`'s space within the cut hyperplane.
pub fn boundary_recursion(
    inst: &IncidenceInstance,
    side: Side,
    sets: &[usize],
    boundary_points: &[usize],
    cut: &Cut,
    cfg: &CoverConfig,
) -> Result<BicliqueCover> {
    cfg.validate()?;
    let b = Builder { inst, cfg };
    let view = b
        .view(side)
        .ok_or_else(|| Error::invalid("instance has no view for the requested side"))?;
    for &i in boundary_points {
        let p = view
            .points
            .get(i)
            .ok_or_else(|| Error::contract(format!("boundary point {i} out of range")))?;
        if cut.axis >= p.dim() || p.coord(cut.axis) != cut.value {
            return Err(Error::contract(format!("point {i} does not lie on the cut")));
        }
    }
    if let Some(&s) = sets.iter().find(|&&s| s >= view.sets.len()) {
        return Err(Error::contract(format!("set {s} out of range")));
    }
    let task = b.child(side, boundary_points.to_vec(), sets.to_vec(), 0, BlockTag::Boundary, Some(side));
    Ok(BicliqueCover::from_blocks(b.solve(task)))
}
