//! Instance families for experiments. Every random family is keyed by a seed
//! and uses ChaCha8, so a seed always reproduces the same instance.

use crate::error::{Error, Result};
use crate::extremal::kst_free_check;
use crate::geometry::{GeomSet, IncidenceInstance, Mode, Point, SideView};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn pt(x: f64, y: f64) -> Point {
    Point::new(vec![x, y]).expect("finite coordinates")
}

/// Points `(i, j)` for `1 <= i <= k`, `1 <= j <= 2k^2` and lines `y = a x + b` for
/// `1 <= a <= k`, `1 <= b <= k^2`. Every line passes through exactly `k` points.
pub fn gen_st_grid(k: usize) -> Result<IncidenceInstance> {
    if k == 0 {
        return Err(Error::invalid("grid parameter k must be at least 1"));
    }
    let mut points = Vec::with_capacity(2 * k * k * k);
    for i in 1..=k {
        for j in 1..=2 * k * k {
            points.push(pt(i as f64, j as f64));
        }
    }
    let mut lines = Vec::with_capacity(k * k * k);
    for a in 1..=k {
        for b in 1..=k * k {
            lines.push(GeomSet::LineEq { a: a as f64, b: -1.0, c: -(b as f64) });
        }
    }
    IncidenceInstance::geometric(points, lines)
}

fn repeat<T: Clone>(v: &[T], c: usize) -> Vec<T> {
    v.iter().flat_map(|x| std::iter::repeat_n(x.clone(), c)).collect()
}

/// Replaces every vertex on both sides by `c` copies; copy `t` of vertex `i` gets index `i*c + t`.
///
/// The base must be `K_{2,2}`-free, which makes the result `K_{c+1,c+1}`-free.
pub fn gen_clone(inst: &IncidenceInstance, c: usize) -> Result<IncidenceInstance> {
    if c == 0 {
        return Err(Error::invalid("clone factor must be at least 1"));
    }
    let edges = inst.edge_set();
    if !kst_free_check(inst.m, inst.n, &edges, 2, 2)? {
        return Err(Error::Refused("base instance contains K_{2,2}".into()));
    }
    if c == 1 {
        return Ok(inst.clone());
    }
    let dup = |v: &SideView| SideView { points: repeat(&v.points, c), sets: repeat(&v.sets, c) };
    match &inst.mode {
        Mode::Explicit { edges } => {
            let mut out = Vec::with_capacity(edges.len() * c * c);
            for &(p, q) in edges {
                for s in 0..c {
                    for t in 0..c {
                        out.push((p * c + s, q * c + t));
                    }
                }
            }
            IncidenceInstance::explicit(inst.m * c, inst.n * c, out)
        }
        Mode::Geometric { p_view, q_view, q_derived } => match (p_view, q_view) {
            (Some(pv), Some(qv)) if !*q_derived => IncidenceInstance::geometric_both(dup(pv), dup(qv), inst.t),
            (Some(pv), _) => {
                IncidenceInstance::geometric_with(repeat(&pv.points, c), repeat(&pv.sets, c), inst.t)
            }
            (None, Some(qv)) => {
                IncidenceInstance::geometric_dual(repeat(&qv.points, c), repeat(&qv.sets, c), inst.t)
            }
            (None, None) => Err(Error::invalid("geometric instance without a view")),
        },
    }
}

/// Set families for [`gen_random`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomFamily {
    /// Points uniform in the unit square; halfplanes with uniform normal direction
    /// whose boundary passes within `sqrt(2)/2` of the square's centre.
    Halfplanes,
    /// Points on the lattice `(1/g) Z^2` in the unit square (`g` a power of two
    /// near `sqrt(m)`); lines with integer normals in `[-3, 3]^2` through a
    /// random lattice point, so incidences are plentiful and exact.
    Lines,
    /// Points uniform in the unit square; disk centres uniform in the square,
    /// radii uniform in `[0.05, 0.5]`.
    Disks,
}

impl RandomFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "halfplanes" | "halfplane" => Some(RandomFamily::Halfplanes),
            "lines" | "line" => Some(RandomFamily::Lines),
            "disks" | "disk" => Some(RandomFamily::Disks),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RandomFamily::Halfplanes => "halfplanes",
            RandomFamily::Lines => "lines",
            RandomFamily::Disks => "disks",
        }
    }
}

fn lattice_side(m: usize) -> usize {
    ((m as f64).sqrt().ceil() as usize).next_power_of_two().max(4)
}

/// A halfplane or line normal of uniform direction, offset around `centre` by at most `spread`.
fn isotropic_linear(rng: &mut ChaCha8Rng, centre: (f64, f64), spread: f64) -> (f64, f64, f64) {
    let theta = rng.random_range(0.0..PI);
    let (a, b) = (theta.cos(), theta.sin());
    let rho = rng.random_range(-spread..=spread);
    (a, b, a * centre.0 + b * centre.1 + rho)
}

/// A reproducible random instance of `m` points against `n` sets.
pub fn gen_random(family: RandomFamily, m: usize, n: usize, seed: u64) -> Result<IncidenceInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half_diag = std::f64::consts::SQRT_2 / 2.0;
    let (points, sets) = match family {
        RandomFamily::Halfplanes => {
            let points = (0..m).map(|_| pt(rng.random(), rng.random())).collect();
            let sets = (0..n)
                .map(|_| {
                    let (a, b, c) = isotropic_linear(&mut rng, (0.5, 0.5), half_diag);
                    GeomSet::Halfplane { a, b, c }
                })
                .collect();
            (points, sets)
        }
        RandomFamily::Lines => {
            let g = lattice_side(m);
            let mut lattice = || {
                let x = rng.random_range(0..g) as f64 / g as f64;
                let y = rng.random_range(0..g) as f64 / g as f64;
                (x, y)
            };
            let points: Vec<Point> = (0..m).map(|_| lattice()).map(|(x, y)| pt(x, y)).collect();
            let mut sets = Vec::with_capacity(n);
            while sets.len() < n {
                let a = rng.random_range(-3i32..=3) as f64;
                let b = rng.random_range(-3i32..=3) as f64;
                if a == 0.0 && b == 0.0 {
                    continue;
                }
                let x = rng.random_range(0..g) as f64 / g as f64;
                let y = rng.random_range(0..g) as f64 / g as f64;
                sets.push(GeomSet::LineEq { a, b, c: a * x + b * y });
            }
            (points, sets)
        }
        RandomFamily::Disks => {
            let points = (0..m).map(|_| pt(rng.random(), rng.random())).collect();
            let sets = (0..n)
                .map(|_| GeomSet::Disk {
                    center: [rng.random(), rng.random()],
                    radius: rng.random_range(0.05..=0.5),
                })
                .collect();
            (points, sets)
        }
    };
    IncidenceInstance::geometric(points, sets)
}

/// `count` lines with uniform direction, each passing within `sqrt(2)/2` of `(0.5, 0.5)`.
pub fn random_lines(count: usize, seed: u64) -> Vec<GeomSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (a, b, c) = isotropic_linear(&mut rng, (0.5, 0.5), std::f64::consts::SQRT_2 / 2.0);
            GeomSet::LineEq { a, b, c }
        })
        .collect()
}

/// `count` points uniform in the unit square.
pub fn random_points(count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| pt(rng.random(), rng.random())).collect()
}

/// Points on the parabola `y = x^2` with `x = k/1024`, `|k| <= 1024`, so `y` is exact;
/// the sets are halfplanes of uniform direction near the curve.
pub fn gen_curve_restricted(m: usize, n: usize, seed: u64) -> Result<IncidenceInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..m)
        .map(|_| {
            let x = rng.random_range(-1024i32..=1024) as f64 / 1024.0;
            pt(x, x * x)
        })
        .collect();
    let sets = (0..n)
        .map(|_| {
            let (a, b, c) = isotropic_linear(&mut rng, (0.0, 0.5), 0.7);
            GeomSet::Halfplane { a, b, c }
        })
        .collect();
    IncidenceInstance::geometric(points, sets)
}
