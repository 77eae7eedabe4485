//! Quantile slab-grid partitions and set-versus-cell classification.
//!
//! A partition of `n` points with parameter `r` cuts the first free axis at
//! `r - 1` quantiles, then cuts every slab on the next free axis at its own
//! quantiles, and so on (at most three levels). Each cut is a hyperplane, so
//! the product of the cuts is a partitioning polynomial of degree about
//! `r^dim`. Points lying exactly on a cut are not assigned to a cell; they are
//! reported per cut so the caller can treat them in one dimension less.

use crate::error::{Error, Result};
use crate::geometry::exact::{ball_sign, linear_sign};
use crate::geometry::{GeomSet, Point, Tri};
use serde::Serialize;
use std::cmp::Ordering;

/// Largest number of free axes a partition will cut.
pub const MAX_PARTITION_DIM: usize = 3;

/// A closed axis-aligned box; `lo[i] == hi[i]` is allowed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxN {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxN {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::invalid("box bounds must have equal, positive length"));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a <= b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::invalid("box needs finite bounds with lo <= hi"));
        }
        Ok(BoxN { lo, hi })
    }

    /// Smallest box holding the given points; `None` for an empty selection.
    pub fn bounding(points: &[Point], idxs: &[usize]) -> Option<BoxN> {
        let first = points[*idxs.first()?].coords();
        let mut lo = first.to_vec();
        let mut hi = first.to_vec();
        for &i in &idxs[1..] {
            for (k, &x) in points[i].coords().iter().enumerate() {
                lo[k] = lo[k].min(x);
                hi[k] = hi[k].max(x);
            }
        }
        Some(BoxN { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Axes along which the box has positive width.
    pub fn free_axes(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.lo[k] < self.hi[k]).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (a, b))| a <= v && v <= b)
    }

    fn with_axis(&self, axis: usize, lo: f64, hi: f64) -> BoxN {
        let mut b = self.clone();
        b.lo[axis] = lo;
        b.hi[axis] = hi;
        b
    }
}

/// A box of the partition and the indices of the points inside it.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Cell {
    pub bbox: BoxN,
    pub point_idxs: Vec<usize>,
}

/// A cut hyperplane `x[axis] = value`, restricted to the slab it splits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cut {
    pub axis: usize,
    pub value: f64,
    pub level: usize,
    pub region: BoxN,
}

/// Points lying on one cut.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundaryGroup {
    pub cut: usize,
    pub point_idxs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CellPartition {
    pub dim: usize,
    /// Free axes cut at levels 1, 2, ...
    pub axes: Vec<usize>,
    pub target_r: usize,
    pub region: BoxN,
    pub cuts: Vec<Cut>,
    pub cells: Vec<Cell>,
    pub boundary: Vec<BoundaryGroup>,
    /// Set when `r^dim >= n`, in which case every gap between coordinates is cut.
    pub degenerate: bool,
    pub point_count: usize,
}

impl CellPartition {
    /// Indices of all points lying on some cut, sorted.
    pub fn boundary_points(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.boundary.iter().flat_map(|g| g.point_idxs.iter().copied()).collect();
        out.sort_unstable();
        out
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn max_occupancy(&self) -> usize {
        self.cells.iter().map(|c| c.point_idxs.len()).max().unwrap_or(0)
    }

    /// `r^dim` over the free axes, saturating.
    pub fn nominal_cells(&self) -> usize {
        nominal(self.target_r, self.axes.len())
    }

    /// Measured cell-count constant: cells / r^dim.
    pub fn c1(&self) -> f64 {
        self.cells.len() as f64 / self.nominal_cells() as f64
    }

    /// Measured occupancy constant: max occupancy * r^dim / n.
    pub fn c2(&self) -> f64 {
        if self.point_count == 0 {
            return 0.0;
        }
        self.max_occupancy() as f64 * self.nominal_cells() as f64 / self.point_count as f64
    }
}

fn nominal(r: usize, dim: usize) -> usize {
    (0..dim).fold(1usize, |acc, _| acc.saturating_mul(r))
}

/// Partitions all of `points` with parameter `r`.
pub fn build_partition(points: &[Point], r: usize) -> Result<CellPartition> {
    if points.is_empty() {
        return Err(Error::invalid("cannot partition an empty point set"));
    }
    let idxs: Vec<usize> = (0..points.len()).collect();
    partition_subset(points, &idxs, r)
}

/// Partitions the selected points; indices in the result refer to `points`.
pub fn partition_subset(points: &[Point], idxs: &[usize], r: usize) -> Result<CellPartition> {
    if r < 2 {
        return Err(Error::invalid(format!("partition parameter r must be at least 2, got {r}")));
    }
    let region = BoxN::bounding(points, idxs)
        .ok_or_else(|| Error::invalid("cannot partition an empty point set"))?;
    let dim = region.dim();
    if let Some(p) = idxs.iter().find(|&&i| points[i].dim() != dim) {
        return Err(Error::contract(format!("point {p} has a different dimension")));
    }
    let axes = region.free_axes();
    if axes.len() > MAX_PARTITION_DIM {
        return Err(Error::invalid(format!(
            "points span {} free axes; at most {MAX_PARTITION_DIM} can be partitioned",
            axes.len()
        )));
    }
    let n = idxs.len();
    let mut part = CellPartition {
        dim,
        degenerate: nominal(r, axes.len()) >= n,
        axes,
        target_r: r,
        region: region.clone(),
        cuts: Vec::new(),
        cells: Vec::new(),
        boundary: Vec::new(),
        point_count: n,
    };
    split(&mut part, points, 0, idxs.to_vec(), region);
    Ok(part)
}

fn midpoint(a: f64, b: f64) -> f64 {
    a / 2.0 + b / 2.0
}

fn split(part: &mut CellPartition, points: &[Point], level: usize, mut idxs: Vec<usize>, region: BoxN) {
    if level == part.axes.len() {
        idxs.sort_unstable();
        part.cells.push(Cell { bbox: region, point_idxs: idxs });
        return;
    }
    let axis = part.axes[level];
    let key = |i: usize| points[i].coord(axis);
    idxs.sort_by(|&i, &j| key(i).total_cmp(&key(j)).then(i.cmp(&j)));
    let vals: Vec<f64> = idxs.iter().map(|&i| key(i)).collect();
    let n = vals.len();

    let mut cuts: Vec<f64> = Vec::new();
    if part.degenerate {
        for w in vals.windows(2) {
            if w[0] < w[1] {
                cuts.push(midpoint(w[0], w[1]));
            }
        }
    } else {
        let r = part.target_r;
        for j in 1..r {
            let k = ((j * n + r / 2) / r).clamp(1, n.saturating_sub(1).max(1));
            if k >= n {
                continue;
            }
            cuts.push(if vals[k - 1] < vals[k] { midpoint(vals[k - 1], vals[k]) } else { vals[k] });
        }
    }
    cuts.dedup();

    let mut start = 0;
    let mut lower = region.lo[axis];
    for &c in &cuts {
        let mut end = start;
        while end < n && vals[end] < c {
            end += 1;
        }
        let mut on = end;
        while on < n && vals[on] == c {
            on += 1;
        }
        if end > start {
            split(part, points, level + 1, idxs[start..end].to_vec(), region.with_axis(axis, lower, c));
        }
        let cut_id = part.cuts.len();
        part.cuts.push(Cut {
            axis,
            value: c,
            level: level + 1,
            region: region.clone(),
        });
        if on > end {
            let mut group = idxs[end..on].to_vec();
            group.sort_unstable();
            part.boundary.push(BoundaryGroup { cut: cut_id, point_idxs: group });
        }
        start = on;
        lower = c;
    }
    if start < n {
        split(part, points, level + 1, idxs[start..].to_vec(), region.with_axis(axis, lower, region.hi[axis]));
    }
}

/// Relation of a set to a closed cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellRelation {
    Contains,
    Crosses,
    Disjoint,
}

/// Corner of the box minimising (`want_max = false`) or maximising the linear form.
fn extreme_corner(coeffs: &[f64], bx: &BoxN, want_max: bool) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| if (c > 0.0) == want_max { bx.hi[k] } else { bx.lo[k] })
        .collect()
}

fn classify_linear(coeffs: &[f64], rhs: f64, bx: &BoxN, equality: bool) -> CellRelation {
    let lo = linear_sign(coeffs, &extreme_corner(coeffs, bx, false), rhs);
    let hi = linear_sign(coeffs, &extreme_corner(coeffs, bx, true), rhs);
    if equality {
        match (lo, hi) {
            (Ordering::Equal, Ordering::Equal) => CellRelation::Contains,
            (Ordering::Greater, _) | (_, Ordering::Less) => CellRelation::Disjoint,
            _ => CellRelation::Crosses,
        }
    } else if hi != Ordering::Greater {
        CellRelation::Contains
    } else if lo == Ordering::Greater {
        CellRelation::Disjoint
    } else {
        CellRelation::Crosses
    }
}

/// Classifies `g` against the closed box. `Contains` and `Disjoint` are certified
/// exactly (or by outward-rounded intervals for generic sets); anything else is `Crosses`.
pub fn classify(g: &GeomSet, bx: &BoxN) -> CellRelation {
    if g.dim() != bx.dim() {
        debug_assert!(false, "classify: dimension mismatch");
        return CellRelation::Crosses;
    }
    match g {
        GeomSet::Halfplane { a, b, c } => classify_linear(&[*a, *b], *c, bx, false),
        GeomSet::LineEq { a, b, c } => classify_linear(&[*a, *b], *c, bx, true),
        GeomSet::Halfspace3 { a, b, c, e } => classify_linear(&[*a, *b, *c], *e, bx, false),
        GeomSet::Disk { center, radius } => {
            let nearest: Vec<f64> = (0..2).map(|k| center[k].clamp(bx.lo[k], bx.hi[k])).collect();
            if ball_sign(center, *radius, &nearest) == Ordering::Less {
                return CellRelation::Disjoint;
            }
            let all_in = crate::geometry::box_corners(&bx.lo, &bx.hi)
                .iter()
                .all(|x| ball_sign(center, *radius, x) != Ordering::Less);
            if all_in {
                CellRelation::Contains
            } else {
                CellRelation::Crosses
            }
        }
        GeomSet::Generic(s) => match s.truth_over(&bx.lo, &bx.hi) {
            Tri::True => CellRelation::Contains,
            Tri::False => CellRelation::Disjoint,
            Tri::Unknown => CellRelation::Crosses,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossingReport {
    pub r: usize,
    pub cell_count: usize,
    pub total_contains: usize,
    pub total_crossings: usize,
    /// `ln(mean crossings per set) / ln r`; absent when nothing crosses.
    pub empirical_exponent: Option<f64>,
    pub per_set_crossings: Vec<usize>,
}

/// Classifies every set against every cell and summarises the crossings.
pub fn crossing_stats(partition: &CellPartition, sets: &[GeomSet]) -> CrossingReport {
    let mut total_contains = 0;
    let mut per_set = Vec::with_capacity(sets.len());
    for g in sets {
        let mut crossings = 0;
        for cell in &partition.cells {
            match classify(g, &cell.bbox) {
                CellRelation::Contains => total_contains += 1,
                CellRelation::Crosses => crossings += 1,
                CellRelation::Disjoint => {}
            }
        }
        per_set.push(crossings);
    }
    let total_crossings: usize = per_set.iter().sum();
    let empirical_exponent = if total_crossings > 0 && !sets.is_empty() {
        let mean = total_crossings as f64 / sets.len() as f64;
        Some(mean.ln() / (partition.target_r as f64).ln())
    } else {
        None
    };
    CrossingReport {
        r: partition.target_r,
        cell_count: partition.cells.len(),
        total_contains,
        total_crossings,
        empirical_exponent,
        per_set_crossings: per_set,
    }
}

/// Independent partitions of several point families; their cell product is the grid.
pub fn grid_partition(families: &[(Vec<Point>, usize)]) -> Result<Vec<CellPartition>> {
    families.iter().map(|(pts, r)| build_partition(pts, *r)).collect()
}

/// Number of product cells of a grid partition.
pub fn product_cell_count(parts: &[CellPartition]) -> usize {
    parts.iter().map(|p| p.cells.len()).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(vec![x, y]).unwrap()).collect()
    }

    fn unit() -> BoxN {
        BoxN::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap()
    }

    #[test]
    fn jittered_grid_splits_evenly() {
        let mut v = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                v.push((i as f64 + 0.01 * j as f64, j as f64 + 0.013 * i as f64));
            }
        }
        let p = build_partition(&pts(&v), 2).unwrap();
        assert_eq!(p.cells.len(), 4);
        assert!(p.cells.iter().all(|c| c.point_idxs.len() == 4));
        assert!(p.boundary_points().is_empty());
    }

    #[test]
    fn tied_quantile_goes_to_boundary() {
        let v = [(0.0, 0.0), (1.0, 0.5), (1.0, 1.0), (1.0, 2.0), (2.0, 0.0), (3.0, 1.0)];
        let p = build_partition(&pts(&v), 2).unwrap();
        assert_eq!(p.boundary_points(), vec![1, 2, 3]);
        let cut = &p.cuts[p.boundary[0].cut];
        assert_eq!((cut.axis, cut.value), (0, 1.0));
        let in_cells: usize = p.cells.iter().map(|c| c.point_idxs.len()).sum();
        assert_eq!(in_cells + 3, 6);
    }

    #[test]
    fn degenerate_partition_isolates_points() {
        let v = [(0.3, 0.1), (0.1, 0.9), (0.7, 0.4), (0.5, 0.5)];
        let p = build_partition(&pts(&v), 4).unwrap();
        assert!(p.degenerate);
        assert!(p.cells.iter().all(|c| c.point_idxs.len() <= 1));
    }

    #[test]
    fn rejects_small_r() {
        assert!(build_partition(&pts(&[(0.0, 0.0)]), 1).is_err());
    }

    #[test]
    fn classify_examples() {
        let hp = GeomSet::Halfplane { a: 1.0, b: 0.0, c: 10.0 };
        assert_eq!(classify(&hp, &unit()), CellRelation::Contains);
        let disk = GeomSet::Disk { center: [0.0, 0.0], radius: 1.0 };
        let far = BoxN::new(vec![5.0, 5.0], vec![6.0, 6.0]).unwrap();
        assert_eq!(classify(&disk, &far), CellRelation::Disjoint);
        let diag = GeomSet::LineEq { a: 1.0, b: -1.0, c: 0.0 };
        assert_eq!(classify(&diag, &unit()), CellRelation::Crosses);
    }

    #[test]
    fn line_contains_degenerate_box_on_it() {
        let vertical = GeomSet::LineEq { a: 1.0, b: 0.0, c: 2.0 };
        let seg = BoxN::new(vec![2.0, 0.0], vec![2.0, 5.0]).unwrap();
        assert_eq!(classify(&vertical, &seg), CellRelation::Contains);
    }

    #[test]
    fn disk_near_corner_is_not_disjoint() {
        let disk = GeomSet::Disk { center: [1.5, 1.5], radius: 0.75 };
        assert_eq!(classify(&disk, &unit()), CellRelation::Crosses);
        let touching = GeomSet::Disk { center: [2.0, 0.5], radius: 1.0 };
        assert_eq!(classify(&touching, &unit()), CellRelation::Crosses);
    }

    #[test]
    fn far_halfplane_never_crosses() {
        let v: Vec<(f64, f64)> = (0..50).map(|i| ((i * 7 % 50) as f64, (i * 13 % 50) as f64)).collect();
        let p = build_partition(&pts(&v), 4).unwrap();
        let hp = GeomSet::Halfplane { a: 1.0, b: 1.0, c: -100.0 };
        let rep = crossing_stats(&p, &[hp]);
        assert_eq!(rep.total_crossings, 0);
        assert_eq!(rep.empirical_exponent, None);
    }

    #[test]
    fn grid_product_count() {
        let mut v = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                v.push((i as f64 + 0.01 * j as f64, j as f64 + 0.013 * i as f64));
            }
        }
        let parts = grid_partition(&[(pts(&v), 2), (pts(&v), 2)]).unwrap();
        assert_eq!(product_cell_count(&parts), 16);
    }
}
