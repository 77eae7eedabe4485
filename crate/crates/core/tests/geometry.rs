mod common;

use bicover::geometry::{AtomSign, SignSet};
use bicover::io::{instance_from_json, instance_to_json};
use bicover::{incident, Formula, GeomSet, IncidenceInstance, Point, Polynomial};
use common::rational_incident;
use proptest::prelude::*;

fn pt(x: f64, y: f64) -> Point {
    Point::new(vec![x, y]).unwrap()
}

/// Coordinates mixing dyadic values (which make boundary cases common) and arbitrary doubles.
fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![(-8i32..=8).prop_map(|k| k as f64 / 4.0), -2.0f64..2.0]
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| pt(x, y))
}

fn set() -> impl Strategy<Value = GeomSet> {
    prop_oneof![
        (coord(), coord(), coord()).prop_map(|(a, b, c)| GeomSet::Halfplane { a, b, c }),
        (coord(), coord(), coord())
            .prop_filter("nonzero normal", |(a, b, _)| *a != 0.0 || *b != 0.0)
            .prop_map(|(a, b, c)| GeomSet::LineEq { a, b, c }),
        (coord(), coord(), (1i32..=8).prop_map(|k| k as f64 / 4.0))
            .prop_map(|(x, y, radius)| GeomSet::Disk { center: [x, y], radius }),
    ]
}

proptest! {
    #[test]
    fn incidence_matches_rational_evaluation(p in point(), g in set()) {
        prop_assert_eq!(incident(&p, &g).unwrap(), rational_incident(&p, &g));
    }

    #[test]
    fn both_views_give_the_same_edges(
        pts in prop::collection::vec(point(), 0..15),
        which in 0usize..3,
        sets in prop::collection::vec(set(), 0..15),
    ) {
        let sets: Vec<GeomSet> = sets
            .into_iter()
            .filter(|g| match which {
                0 => matches!(g, GeomSet::Halfplane { .. }),
                1 => matches!(g, GeomSet::LineEq { .. }),
                _ => matches!(g, GeomSet::Disk { .. }),
            })
            .collect();
        let inst = IncidenceInstance::geometric(pts.clone(), sets.clone()).unwrap();
        let direct: Vec<(usize, usize)> = (0..pts.len())
            .flat_map(|i| (0..sets.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| rational_incident(&pts[i], &sets[j]))
            .collect();
        prop_assert_eq!(inst.edge_set(), direct.clone());
        if let Some(via_q) = inst.edge_set_via_q() {
            prop_assert_eq!(via_q, direct);
        }
    }

    #[test]
    fn json_round_trip_keeps_edges(pts in prop::collection::vec(point(), 1..10), sets in prop::collection::vec(set(), 1..10)) {
        let sets: Vec<GeomSet> = sets.into_iter().filter(|g| matches!(g, GeomSet::Disk { .. })).collect();
        let inst = IncidenceInstance::geometric(pts, sets).unwrap();
        let back = instance_from_json(&instance_to_json(&inst)).unwrap();
        prop_assert_eq!(back.edge_set(), inst.edge_set());
    }
}

#[test]
fn generic_halfplane_agrees_with_builtin() {
    // x + 2y <= 1 written as 1 - x - 2y >= 0.
    let f = Polynomial::affine(&[-1.0, -2.0], 1.0).unwrap();
    let generic = GeomSet::Generic(SignSet::new(2, vec![f], Formula::atom(0, AtomSign::Nonneg)).unwrap());
    let builtin = GeomSet::Halfplane { a: 1.0, b: 2.0, c: 1.0 };
    for x in -4..=4 {
        for y in -4..=4 {
            let p = pt(x as f64 / 2.0, y as f64 / 4.0);
            assert_eq!(incident(&p, &generic).unwrap(), incident(&p, &builtin).unwrap(), "{p:?}");
        }
    }
}

#[test]
fn near_boundary_points_decided_exactly() {
    // 0.1 is not exactly representable; the stored doubles decide the answer.
    let g = GeomSet::LineEq { a: 1.0, b: 1.0, c: 0.3 };
    let p = pt(0.1, 0.2);
    assert_eq!(incident(&p, &g).unwrap(), rational_incident(&p, &g));
    let h = GeomSet::Halfplane { a: 1.0, b: 1.0, c: 0.1 + 0.2 };
    assert!(incident(&p, &h).unwrap());
}

#[test]
fn dimension_mismatch_rejected() {
    let p3 = Point::new(vec![0.0, 0.0, 0.0]).unwrap();
    assert!(IncidenceInstance::geometric(vec![p3], vec![GeomSet::Halfplane { a: 1.0, b: 0.0, c: 0.0 }]).is_err());
    assert!(Point::new(vec![f64::NAN]).is_err());
}

#[test]
fn explicit_edges_sorted_and_checked() {
    let e = IncidenceInstance::explicit(2, 2, vec![(1, 1), (0, 1), (1, 1)]).unwrap();
    assert_eq!(e.edge_set(), vec![(0, 1), (1, 1)]);
    assert!(IncidenceInstance::explicit(2, 2, vec![(2, 0)]).is_err());
}
