//! Points, semi-algebraic set families, and exact incidence.
//!
//! An incidence instance is a bipartite graph between `m` elements of `P` and
//! `n` elements of `Q`. In geometric mode it is stored as one or both of two
//! views: points of `P` against the neighbour sets of `Q` (the *P-view*), and
//! points of `Q` against the neighbour sets of `P` (the *Q-view*). For the
//! built-in families the Q-view is derived from the P-view by duality.

pub mod exact;
pub mod poly;

use crate::error::{Error, Result};
use exact::{ball_sign, linear_sign, rat};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

pub use poly::{box_corners, Atom, AtomSign, Formula, Interval, Polynomial, SignSet, Tri};

/// Default description complexity: bound on the number and degree of defining polynomials.
pub const DEFAULT_COMPLEXITY: usize = 4;

/// Default tolerance for equality tests in floating mode.
pub const DEFAULT_TAU_EQ: f64 = 1e-9;

/// A point in `R^d` with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("point must have at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("point coordinates must be finite"));
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn coord(&self, axis: usize) -> f64 {
        self.coords[axis]
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords
    }
}

/// How incidence is decided.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Numeric {
    /// Exact signs over the rationals represented by the stored doubles.
    #[default]
    Exact,
    /// Plain double arithmetic; equalities hold within `tau_eq`.
    Float { tau_eq: f64 },
}

/// A neighbour set `gamma` of one vertex, living in the other side's space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeomSet {
    /// `a*x + b*y <= c`
    Halfplane { a: f64, b: f64, c: f64 },
    /// `a*x + b*y = c`
    #[serde(rename = "line")]
    LineEq { a: f64, b: f64, c: f64 },
    /// Closed disk.
    Disk { center: [f64; 2], radius: f64 },
    /// `a*x + b*y + c*z <= e`
    Halfspace3 { a: f64, b: f64, c: f64, e: f64 },
    /// Sign formula over polynomials.
    Generic(SignSet),
}

/// Family tag of a [`GeomSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Halfplane,
    Line,
    Disk,
    Halfspace3,
    Generic,
}

impl GeomSet {
    pub fn family(&self) -> Family {
        match self {
            GeomSet::Halfplane { .. } => Family::Halfplane,
            GeomSet::LineEq { .. } => Family::Line,
            GeomSet::Disk { .. } => Family::Disk,
            GeomSet::Halfspace3 { .. } => Family::Halfspace3,
            GeomSet::Generic(_) => Family::Generic,
        }
    }

    /// Dimension of the ambient space the set lives in.
    pub fn dim(&self) -> usize {
        match self {
            GeomSet::Halfplane { .. } | GeomSet::LineEq { .. } | GeomSet::Disk { .. } => 2,
            GeomSet::Halfspace3 { .. } => 3,
            GeomSet::Generic(s) => s.dim,
        }
    }

    /// Rejects degenerate parameters and over-complex generic sets.
    pub fn validate(&self, t: usize) -> Result<()> {
        let finite = |vals: &[f64]| vals.iter().all(|v| v.is_finite());
        match self {
            GeomSet::Halfplane { a, b, c } | GeomSet::LineEq { a, b, c } => {
                if !finite(&[*a, *b, *c]) {
                    return Err(Error::invalid("non-finite set parameter"));
                }
                if *a == 0.0 && *b == 0.0 {
                    return Err(Error::invalid("halfplane/line with zero normal"));
                }
            }
            GeomSet::Disk { center, radius } => {
                if !finite(&[center[0], center[1], *radius]) {
                    return Err(Error::invalid("non-finite set parameter"));
                }
                if *radius <= 0.0 {
                    return Err(Error::invalid("disk radius must be positive"));
                }
            }
            GeomSet::Halfspace3 { a, b, c, e } => {
                if !finite(&[*a, *b, *c, *e]) {
                    return Err(Error::invalid("non-finite set parameter"));
                }
                if *a == 0.0 && *b == 0.0 && *c == 0.0 {
                    return Err(Error::invalid("halfspace with zero normal"));
                }
            }
            GeomSet::Generic(s) => s.validate(t)?,
        }
        Ok(())
    }

    /// Membership of a coordinate slice; the caller guarantees matching dimension.
    pub(crate) fn contains(&self, x: &[f64], numeric: Numeric) -> bool {
        match numeric {
            Numeric::Exact => self.contains_exact(x),
            Numeric::Float { tau_eq } => self.contains_float(x, tau_eq),
        }
    }

    pub(crate) fn contains_exact(&self, x: &[f64]) -> bool {
        match self {
            GeomSet::Halfplane { a, b, c } => linear_sign(&[*a, *b], x, *c) != Ordering::Greater,
            GeomSet::LineEq { a, b, c } => linear_sign(&[*a, *b], x, *c) == Ordering::Equal,
            GeomSet::Disk { center, radius } => ball_sign(center, *radius, x) != Ordering::Less,
            GeomSet::Halfspace3 { a, b, c, e } => {
                linear_sign(&[*a, *b, *c], x, *e) != Ordering::Greater
            }
            GeomSet::Generic(s) => s.contains_exact(x),
        }
    }

    fn contains_float(&self, x: &[f64], tau_eq: f64) -> bool {
        match self {
            GeomSet::Halfplane { a, b, c } => a * x[0] + b * x[1] <= *c,
            GeomSet::LineEq { a, b, c } => (a * x[0] + b * x[1] - c).abs() <= tau_eq,
            GeomSet::Disk { center, radius } => {
                let (dx, dy) = (x[0] - center[0], x[1] - center[1]);
                dx * dx + dy * dy <= radius * radius
            }
            GeomSet::Halfspace3 { a, b, c, e } => a * x[0] + b * x[1] + c * x[2] <= *e,
            GeomSet::Generic(s) => s.contains_float(x),
        }
    }

    /// The parameters of this set as a point of the dual (parameter) space.
    ///
    /// Linear families use homogeneous coefficients, so a halfplane or line of
    /// the plane becomes a point of `R^3` and a halfspace of `R^3` a point of
    /// `R^4`. A disk becomes `(cx, cy, r)`. Generic sets have no dual.
    pub fn dual_point(&self) -> Option<Point> {
        let coords = match self {
            GeomSet::Halfplane { a, b, c } | GeomSet::LineEq { a, b, c } => vec![*a, *b, *c],
            GeomSet::Disk { center, radius } => vec![center[0], center[1], *radius],
            GeomSet::Halfspace3 { a, b, c, e } => vec![*a, *b, *c, *e],
            GeomSet::Generic(_) => return None,
        };
        Point::new(coords).ok()
    }
}

/// The neighbour set of point `p` in the dual space of `family`.
///
/// Membership of `s.dual_point()` in `dual_set(family, p)` is decided by the
/// same exact quantity as membership of `p` in `s`.
pub fn dual_set(family: Family, p: &Point) -> Option<GeomSet> {
    let x = p.coords();
    match (family, x.len()) {
        (Family::Halfplane, 2) => Some(GeomSet::Halfspace3 {
            a: x[0],
            b: x[1],
            c: -1.0,
            e: 0.0,
        }),
        (Family::Line, 2) => {
            // x*A + y*B - C = 0, as (f >= 0) and (-f >= 0).
            let f = Polynomial::affine(&[x[0], x[1], -1.0], 0.0).ok()?;
            let g = f.negated();
            let formula = Formula::And(vec![
                Formula::atom(0, AtomSign::Nonneg),
                Formula::atom(1, AtomSign::Nonneg),
            ]);
            SignSet::new(3, vec![f, g], formula).ok().map(GeomSet::Generic)
        }
        (Family::Disk, 2) => {
            // W^2 - (U - x)^2 - (V - y)^2 >= 0, with exact coefficients.
            let (px, py) = (rat(x[0]), rat(x[1]));
            let two = BigRational::from_integer(2.into());
            let one = BigRational::from_integer(1.into());
            let terms = vec![
                (vec![0, 0, 2], one.clone()),
                (vec![2, 0, 0], -one.clone()),
                (vec![0, 2, 0], -one),
                (vec![1, 0, 0], &two * &px),
                (vec![0, 1, 0], &two * &py),
                (vec![0, 0, 0], -(&px * &px) - &py * &py),
            ];
            let f = Polynomial::from_rational(3, terms).ok()?;
            SignSet::new(3, vec![f], Formula::atom(0, AtomSign::Nonneg))
                .ok()
                .map(GeomSet::Generic)
        }
        (Family::Halfspace3, 3) => {
            // E - x*A - y*B - z*C >= 0
            let f = Polynomial::affine(&[-x[0], -x[1], -x[2], 1.0], 0.0).ok()?;
            SignSet::new(4, vec![f], Formula::atom(0, AtomSign::Nonneg))
                .ok()
                .map(GeomSet::Generic)
        }
        _ => None,
    }
}

/// Exact incidence test: is `p` in `g`?
pub fn incident(p: &Point, g: &GeomSet) -> Result<bool> {
    incident_with(p, g, Numeric::Exact)
}

pub fn incident_with(p: &Point, g: &GeomSet, numeric: Numeric) -> Result<bool> {
    if p.dim() != g.dim() {
        return Err(Error::contract(format!(
            "point of dimension {} tested against a set in dimension {}",
            p.dim(),
            g.dim()
        )));
    }
    Ok(g.contains(p.coords(), numeric))
}

/// Evaluates `f` at `x`; exact mode rounds the exact rational value once.
pub fn eval_polynomial(f: &Polynomial, x: &Point, numeric: Numeric) -> Result<f64> {
    if f.dim() != x.dim() {
        return Err(Error::contract(format!(
            "{}-variate polynomial evaluated at a point of dimension {}",
            f.dim(),
            x.dim()
        )));
    }
    Ok(match numeric {
        Numeric::Exact => {
            let v = f.eval_exact(x.coords());
            if v.is_zero() {
                0.0
            } else {
                v.to_f64().unwrap_or(f64::NAN)
            }
        }
        Numeric::Float { .. } => f.eval(x.coords()),
    })
}

/// Points of one side together with the neighbour sets of the other side,
/// all living in the same space.
#[derive(Clone, Debug, PartialEq)]
pub struct SideView {
    pub points: Vec<Point>,
    pub sets: Vec<GeomSet>,
}

impl SideView {
    pub fn new(points: Vec<Point>, sets: Vec<GeomSet>, t: usize) -> Result<Self> {
        let dim = points
            .first()
            .map(Point::dim)
            .or_else(|| sets.first().map(GeomSet::dim));
        if let Some(d) = dim {
            if let Some(p) = points.iter().find(|p| p.dim() != d) {
                return Err(Error::invalid(format!(
                    "mixed point dimensions {} and {d}",
                    p.dim()
                )));
            }
            if let Some(s) = sets.iter().find(|s| s.dim() != d) {
                return Err(Error::invalid(format!(
                    "set of dimension {} among points of dimension {d}",
                    s.dim()
                )));
            }
        }
        for s in &sets {
            s.validate(t)?;
        }
        Ok(SideView { points, sets })
    }

    pub fn dim(&self) -> usize {
        self.points
            .first()
            .map(Point::dim)
            .or_else(|| self.sets.first().map(GeomSet::dim))
            .unwrap_or(0)
    }

    /// `(point index, set index)` pairs, sorted.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            for (j, s) in self.sets.iter().enumerate() {
                if s.contains_exact(p.coords()) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Builds the opposite view by duality when every set is of one built-in family.
    pub fn dual(&self) -> Option<SideView> {
        let family = self.sets.first()?.family();
        if family == Family::Generic || self.sets.iter().any(|s| s.family() != family) {
            return None;
        }
        let points = self.sets.iter().map(GeomSet::dual_point).collect::<Option<Vec<_>>>()?;
        let sets = self
            .points
            .iter()
            .map(|p| dual_set(family, p))
            .collect::<Option<Vec<_>>>()?;
        Some(SideView { points, sets })
    }
}

/// How the edges of an instance are given.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    /// P-view: points of `P` against sets of `Q`; Q-view: points of `Q` against sets of `P`.
    Geometric {
        p_view: Option<SideView>,
        q_view: Option<SideView>,
        /// Whether the Q-view was derived by duality rather than supplied.
        q_derived: bool,
    },
    Explicit { edges: Vec<(usize, usize)> },
}

/// A bipartite incidence instance between `m` elements of `P` and `n` of `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceInstance {
    pub d1: usize,
    pub d2: usize,
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub mode: Mode,
}

impl IncidenceInstance {
    /// Points of `P` against the neighbour sets of `Q`; the Q-view is derived when possible.
    pub fn geometric(points_p: Vec<Point>, sets_q: Vec<GeomSet>) -> Result<Self> {
        Self::geometric_with(points_p, sets_q, DEFAULT_COMPLEXITY)
    }

    pub fn geometric_with(points_p: Vec<Point>, sets_q: Vec<GeomSet>, t: usize) -> Result<Self> {
        let p_view = SideView::new(points_p, sets_q, t)?;
        let q_view = p_view.dual();
        Ok(IncidenceInstance {
            d1: p_view.dim(),
            d2: q_view.as_ref().map(SideView::dim).unwrap_or(0),
            m: p_view.points.len(),
            n: p_view.sets.len(),
            t,
            mode: Mode::Geometric {
                q_derived: q_view.is_some(),
                p_view: Some(p_view),
                q_view,
            },
        })
    }

    /// Points of `Q` against the neighbour sets of `P` only.
    pub fn geometric_dual(points_q: Vec<Point>, sets_p: Vec<GeomSet>, t: usize) -> Result<Self> {
        let q_view = SideView::new(points_q, sets_p, t)?;
        Ok(IncidenceInstance {
            d1: 0,
            d2: q_view.dim(),
            m: q_view.sets.len(),
            n: q_view.points.len(),
            t,
            mode: Mode::Geometric {
                p_view: None,
                q_view: Some(q_view),
                q_derived: false,
            },
        })
    }

    /// Both views supplied; sizes must agree.
    pub fn geometric_both(p_view: SideView, q_view: SideView, t: usize) -> Result<Self> {
        if p_view.points.len() != q_view.sets.len() || p_view.sets.len() != q_view.points.len() {
            return Err(Error::invalid("P-view and Q-view sizes disagree"));
        }
        let p_view = SideView::new(p_view.points, p_view.sets, t)?;
        let q_view = SideView::new(q_view.points, q_view.sets, t)?;
        Ok(IncidenceInstance {
            d1: p_view.dim(),
            d2: q_view.dim(),
            m: p_view.points.len(),
            n: p_view.sets.len(),
            t,
            mode: Mode::Geometric {
                p_view: Some(p_view),
                q_view: Some(q_view),
                q_derived: false,
            },
        })
    }

    /// Abstract instance from an edge list; edges are sorted and deduplicated.
    pub fn explicit(m: usize, n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(p, q)) = edges.iter().find(|&&(p, q)| p >= m || q >= n) {
            return Err(Error::invalid(format!(
                "edge ({p}, {q}) out of range for a {m} x {n} instance"
            )));
        }
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        Ok(IncidenceInstance {
            d1: 0,
            d2: 0,
            m,
            n,
            t: DEFAULT_COMPLEXITY,
            mode: Mode::Explicit { edges },
        })
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.mode, Mode::Explicit { .. })
    }

    pub fn p_view(&self) -> Option<&SideView> {
        match &self.mode {
            Mode::Geometric { p_view, .. } => p_view.as_ref(),
            Mode::Explicit { .. } => None,
        }
    }

    pub fn q_view(&self) -> Option<&SideView> {
        match &self.mode {
            Mode::Geometric { q_view, .. } => q_view.as_ref(),
            Mode::Explicit { .. } => None,
        }
    }

    /// Is `(p, q)` an edge? Explicit mode uses binary search.
    pub fn has_edge(&self, p: usize, q: usize) -> bool {
        match &self.mode {
            Mode::Explicit { edges } => edges.binary_search(&(p, q)).is_ok(),
            Mode::Geometric { p_view, q_view, .. } => match (p_view, q_view) {
                (Some(v), _) => v.sets[q].contains_exact(v.points[p].coords()),
                (None, Some(v)) => v.sets[p].contains_exact(v.points[q].coords()),
                (None, None) => false,
            },
        }
    }

    /// The sorted, duplicate-free edge list `(p index, q index)`.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        match &self.mode {
            Mode::Explicit { edges } => edges.clone(),
            Mode::Geometric { p_view, q_view, .. } => match (p_view, q_view) {
                (Some(v), _) => v.incidences(),
                (None, Some(v)) => {
                    let mut e: Vec<_> = v.incidences().into_iter().map(|(q, p)| (p, q)).collect();
                    e.sort_unstable();
                    e
                }
                (None, None) => Vec::new(),
            },
        }
    }

    /// Edges computed through the Q-view, if there is one.
    pub fn edge_set_via_q(&self) -> Option<Vec<(usize, usize)>> {
        let v = self.q_view()?;
        let mut e: Vec<_> = v.incidences().into_iter().map(|(q, p)| (p, q)).collect();
        e.sort_unstable();
        Some(e)
    }

    /// Edges among the given subsets of `P` and `Q`.
    pub fn edges_between(&self, ps: &[usize], qs: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &p in ps {
            for &q in qs {
                if self.has_edge(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

/// Sorted edge list of an instance.
pub fn edge_set(inst: &IncidenceInstance) -> Vec<(usize, usize)> {
    inst.edge_set()
}
