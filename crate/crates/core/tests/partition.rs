use bicover::partition::{partition_subset, BoxN};
use bicover::{build_partition, classify, CellRelation, GeomSet, Point};
use proptest::prelude::*;

fn points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Point>> {
    let c = prop_oneof![(0i32..16).prop_map(|k| k as f64 / 8.0), 0.0f64..2.0];
    prop::collection::vec(prop::collection::vec(c, dim), 1..max)
        .prop_map(|v| v.into_iter().map(|c| Point::new(c).unwrap()).collect())
}

fn corners(b: &BoxN) -> Vec<Vec<f64>> {
    let mut out = vec![vec![]];
    for k in 0..b.dim() {
        out = out
            .into_iter()
            .flat_map(|c: Vec<f64>| {
                let mut lo = c.clone();
                lo.push(b.lo[k]);
                let mut hi = c;
                hi.push(b.hi[k]);
                [lo, hi]
            })
            .collect();
    }
    out
}

proptest! {
    #[test]
    fn every_point_lands_exactly_once(dim in 1usize..=3, pts in points(3, 80), r in 2usize..6) {
        let pts: Vec<Point> = pts.into_iter().map(|p| Point::new(p.coords()[..dim].to_vec()).unwrap()).collect();
        let part = build_partition(&pts, r).unwrap();
        let mut seen = vec![0usize; pts.len()];
        for c in &part.cells {
            for &i in &c.point_idxs {
                seen[i] += 1;
                prop_assert!(c.bbox.contains(pts[i].coords()));
            }
        }
        for g in &part.boundary {
            let cut = &part.cuts[g.cut];
            for &i in &g.point_idxs {
                seen[i] += 1;
                prop_assert_eq!(pts[i].coord(cut.axis), cut.value);
            }
        }
        prop_assert!(seen.iter().all(|&s| s == 1), "{:?}", seen);
    }

    #[test]
    fn cells_have_disjoint_interiors(pts in points(2, 60), r in 2usize..5) {
        let part = build_partition(&pts, r).unwrap();
        for (i, a) in part.cells.iter().enumerate() {
            for b in &part.cells[i + 1..] {
                let overlap = (0..2).all(|k| a.bbox.lo[k].max(b.bbox.lo[k]) < a.bbox.hi[k].min(b.bbox.hi[k]));
                prop_assert!(!overlap, "{:?} {:?}", a.bbox, b.bbox);
            }
        }
    }

    #[test]
    fn occupancy_bound_with_distinct_coordinates(n in 20usize..200, r in 2usize..5, seed in 0u64..1000) {
        // Distinct coordinates on both axes: no ties, no boundary points beyond the cuts' own.
        let pts: Vec<Point> = (0..n)
            .map(|i| {
                let x = ((i as u64 * 7919 + seed * 31) % 100_003) as f64;
                let y = ((i as u64 * 104_729 + seed * 17) % 100_019) as f64;
                Point::new(vec![x, y]).unwrap()
            })
            .collect();
        let part = build_partition(&pts, r).unwrap();
        if !part.degenerate {
            let bound = (2 * n).div_ceil(r * r);
            prop_assert!(part.max_occupancy() <= bound, "{} > {}", part.max_occupancy(), bound);
            prop_assert!(part.cell_count() <= 2 * r * r);
        }
    }

    #[test]
    fn classification_is_sound(
        lo in (-2.0f64..2.0, -2.0f64..2.0), w in (0.0f64..1.0, 0.0f64..1.0),
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0, rad in 0.1f64..2.0,
    ) {
        let bx = BoxN::new(vec![lo.0, lo.1], vec![lo.0 + w.0, lo.1 + w.1]).unwrap();
        let sets = [
            GeomSet::Halfplane { a, b, c },
            GeomSet::Disk { center: [a, b], radius: rad },
        ];
        let mut samples = corners(&bx);
        for i in 0..=4 {
            for j in 0..=4 {
                samples.push(vec![bx.lo[0] + w.0 * i as f64 / 4.0, bx.lo[1] + w.1 * j as f64 / 4.0]);
            }
        }
        for g in &sets {
            let inside: Vec<bool> = samples
                .iter()
                .filter(|s| bx.contains(s))
                .map(|s| bicover::incident(&Point::new(s.clone()).unwrap(), g).unwrap())
                .collect();
            match classify(g, &bx) {
                CellRelation::Contains => prop_assert!(inside.iter().all(|&x| x)),
                CellRelation::Disjoint => prop_assert!(inside.iter().all(|&x| !x)),
                CellRelation::Crosses => {}
            }
        }
    }
}

#[test]
fn subset_indices_refer_to_full_list() {
    let pts: Vec<Point> = (0..10).map(|i| Point::new(vec![i as f64, (i * i) as f64]).unwrap()).collect();
    let part = partition_subset(&pts, &[1, 3, 5, 7, 9], 2).unwrap();
    let mut all: Vec<usize> = part.cells.iter().flat_map(|c| c.point_idxs.clone()).collect();
    all.extend(part.boundary_points());
    all.sort_unstable();
    assert_eq!(all, vec![1, 3, 5, 7, 9]);
}

#[test]
fn r_below_two_is_rejected() {
    let pts = vec![Point::new(vec![0.0, 0.0]).unwrap()];
    assert!(build_partition(&pts, 1).is_err());
    assert!(build_partition(&[], 2).is_err());
}

#[test]
fn collinear_points_partition_along_the_line() {
    let pts: Vec<Point> = (0..40).map(|i| Point::new(vec![3.0, i as f64]).unwrap()).collect();
    let part = build_partition(&pts, 4).unwrap();
    assert_eq!(part.axes, vec![1]);
    assert!(part.cell_count() >= 2);
}
