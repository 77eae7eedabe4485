use super::exact::{rat, rat_pow, rat_sign, UNIT};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Closed interval with outward-rounded endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    fn guard(self) -> Self {
        if self.lo.is_nan() || self.hi.is_nan() {
            Interval::ENTIRE
        } else {
            self
        }
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        }
        .guard()
    }

    pub fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        if p.iter().any(|v| v.is_nan()) {
            return Interval::ENTIRE;
        }
        let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        // Products of exact zeros are exact.
        let lo = if lo == 0.0 { 0.0 } else { lo.next_down() };
        let hi = if hi == 0.0 { 0.0 } else { hi.next_up() };
        Interval { lo, hi }
    }

    fn pow_nonneg(self, e: u32) -> Interval {
        let mut acc = Interval::point(1.0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Interval {
            lo: acc.lo.max(0.0),
            hi: acc.hi,
        }
    }

    pub fn pow(self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(1.0);
        }
        if self.lo >= 0.0 {
            return self.pow_nonneg(e);
        }
        if self.hi <= 0.0 {
            let m = Interval::new(-self.hi, -self.lo).pow_nonneg(e);
            return if e.is_multiple_of(2) { m } else { Interval::new(-m.hi, -m.lo) };
        }
        let reach = Interval::new(0.0, self.lo.abs().max(self.hi)).pow_nonneg(e);
        if e.is_multiple_of(2) {
            Interval::new(0.0, reach.hi)
        } else {
            let lo = Interval::new(0.0, -self.lo).pow_nonneg(e).hi;
            let hi = Interval::new(0.0, self.hi).pow_nonneg(e).hi;
            Interval::new(-lo, hi)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub exps: Vec<u32>,
    pub coef: BigRational,
    approx: f64,
    enclosure: Interval,
}

impl Term {
    fn new(exps: Vec<u32>, coef: BigRational) -> Self {
        let approx = coef.to_f64().unwrap_or(f64::NAN);
        let enclosure = if approx.is_finite() && rat(approx) == coef {
            Interval::point(approx)
        } else if approx.is_finite() {
            Interval::new(approx.next_down(), approx.next_up())
        } else {
            Interval::ENTIRE
        };
        Term {
            exps,
            coef,
            approx,
            enclosure,
        }
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted by exponent vector with zero coefficients removed.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, f64)>) -> Result<Self> {
        let mut exact = Vec::new();
        for (exps, c) in terms {
            if !c.is_finite() {
                return Err(Error::invalid("non-finite polynomial coefficient"));
            }
            exact.push((exps, rat(c)));
        }
        Self::from_rational(dim, exact)
    }

    pub fn from_rational(
        dim: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("polynomial dimension must be positive"));
        }
        let mut merged: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != dim {
                return Err(Error::invalid(format!(
                    "exponent vector of length {} in a {dim}-variate polynomial",
                    exps.len()
                )));
            }
            *merged.entry(exps).or_insert_with(BigRational::zero) += c;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| Term::new(e, c))
            .collect();
        Ok(Polynomial { dim, terms })
    }

    pub fn constant(dim: usize, c: f64) -> Result<Self> {
        Self::new(dim, [(vec![0; dim], c)])
    }

    /// `sum(coeffs[i] * x_i) + constant`.
    pub fn affine(coeffs: &[f64], constant: f64) -> Result<Self> {
        let dim = coeffs.len();
        let mut terms = vec![(vec![0; dim], constant)];
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; dim];
            e[i] = 1;
            terms.push((e, c));
        }
        Self::new(dim, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    /// Every variable appears with exponent at most one in every term.
    /// Such a polynomial attains its extremes over a box at the box's corners.
    pub fn is_multilinear(&self) -> bool {
        self.terms.iter().all(|t| t.exps.iter().all(|&e| e <= 1))
    }

    pub fn negated(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(t.exps.clone(), -t.coef.clone()))
            .collect();
        Polynomial {
            dim: self.dim,
            terms,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|t| {
                t.exps
                    .iter()
                    .zip(x)
                    .fold(t.approx, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    pub fn eval_exact(&self, x: &[f64]) -> BigRational {
        debug_assert_eq!(x.len(), self.dim);
        let xs: Vec<BigRational> = x.iter().map(|&v| rat(v)).collect();
        let mut acc = BigRational::zero();
        for t in &self.terms {
            let mut v = t.coef.clone();
            for (&e, xi) in t.exps.iter().zip(&xs) {
                if e > 0 {
                    v *= rat_pow(xi, e);
                }
            }
            acc += v;
        }
        acc
    }

    /// Exact sign at `x`, with a floating-point filter in front.
    pub fn sign_at(&self, x: &[f64]) -> Ordering {
        let mut value = 0.0;
        let mut magnitude = 0.0;
        let mut finite = true;
        for t in &self.terms {
            let mut v = t.approx;
            for (&e, &xi) in t.exps.iter().zip(x) {
                for _ in 0..e {
                    v *= xi;
                }
            }
            finite &= v.is_finite();
            value += v;
            magnitude += v.abs();
        }
        if finite && value.is_finite() {
            let ops = (self.degree() as usize + self.terms.len() + 4) as f64;
            let bound = 2.0 * ops * UNIT * magnitude + ops * f64::MIN_POSITIVE;
            if value > bound {
                return Ordering::Greater;
            }
            if value < -bound {
                return Ordering::Less;
            }
        }
        rat_sign(&self.eval_exact(x))
    }

    /// Outward-rounded enclosure of the polynomial's range over the box `[lo, hi]`.
    pub fn range_over(&self, lo: &[f64], hi: &[f64]) -> Interval {
        let vars: Vec<Interval> = lo.iter().zip(hi).map(|(&a, &b)| Interval::new(a, b)).collect();
        let mut acc = Interval::point(0.0);
        for t in &self.terms {
            let mut v = t.enclosure;
            for (&e, xi) in t.exps.iter().zip(&vars) {
                if e > 0 {
                    v = v.mul(xi.pow(e));
                }
            }
            acc = acc.add(v);
        }
        acc
    }
}

/// Three-valued truth used when a formula is evaluated over a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomSign {
    /// `f >= 0`
    Nonneg,
    /// `f < 0`
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub poly: usize,
    pub sign: AtomSign,
}

impl Atom {
    pub fn holds(&self, sign: Ordering) -> bool {
        match self.sign {
            AtomSign::Nonneg => sign != Ordering::Less,
            AtomSign::Neg => sign == Ordering::Less,
        }
    }
}

/// Boolean formula over sign atoms, in negation normal form.
///
/// `And([])` is true and `Or([])` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(poly: usize, sign: AtomSign) -> Self {
        Formula::Atom(Atom { poly, sign })
    }

    pub fn always() -> Self {
        Formula::And(Vec::new())
    }

    pub fn never() -> Self {
        Formula::Or(Vec::new())
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::Atom(a) => out.push(*a),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
        }
    }

    pub fn eval(&self, atom: &mut impl FnMut(&Atom) -> bool) -> bool {
        match self {
            Formula::Atom(a) => atom(a),
            Formula::And(fs) => fs.iter().all(|f| f.eval(atom)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(atom)),
        }
    }

    pub fn eval3(&self, atom: &mut impl FnMut(&Atom) -> Tri) -> Tri {
        match self {
            Formula::Atom(a) => atom(a),
            Formula::And(fs) => {
                let mut out = Tri::True;
                for f in fs {
                    match f.eval3(atom) {
                        Tri::False => return Tri::False,
                        Tri::Unknown => out = Tri::Unknown,
                        Tri::True => {}
                    }
                }
                out
            }
            Formula::Or(fs) => {
                let mut out = Tri::False;
                for f in fs {
                    match f.eval3(atom) {
                        Tri::True => return Tri::True,
                        Tri::Unknown => out = Tri::Unknown,
                        Tri::False => {}
                    }
                }
                out
            }
        }
    }
}

/// A semi-algebraic set given by polynomials and a sign formula over them.
#[derive(Clone, Debug, PartialEq)]
pub struct SignSet {
    pub dim: usize,
    pub polys: Vec<Polynomial>,
    pub formula: Formula,
}

impl SignSet {
    pub fn new(dim: usize, polys: Vec<Polynomial>, formula: Formula) -> Result<Self> {
        let s = SignSet { dim, polys, formula };
        s.check_shape()?;
        Ok(s)
    }

    fn check_shape(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::invalid("sign set dimension must be positive"));
        }
        if let Some(p) = self.polys.iter().find(|p| p.dim() != self.dim) {
            return Err(Error::invalid(format!(
                "polynomial of dimension {} in a {}-dimensional sign set",
                p.dim(),
                self.dim
            )));
        }
        if let Some(a) = self.formula.atoms().iter().find(|a| a.poly >= self.polys.len()) {
            return Err(Error::invalid(format!(
                "formula references polynomial {} of {}",
                a.poly,
                self.polys.len()
            )));
        }
        Ok(())
    }

    /// Checks the description-complexity bound `t` on count and degree.
    pub fn validate(&self, t: usize) -> Result<()> {
        self.check_shape()?;
        if self.polys.len() > t {
            return Err(Error::invalid(format!(
                "{} polynomials exceed description complexity {t}",
                self.polys.len()
            )));
        }
        if let Some(p) = self.polys.iter().find(|p| p.degree() as usize > t) {
            return Err(Error::invalid(format!(
                "polynomial degree {} exceeds description complexity {t}",
                p.degree()
            )));
        }
        Ok(())
    }

    pub fn contains_exact(&self, x: &[f64]) -> bool {
        let mut cache: Vec<Option<Ordering>> = vec![None; self.polys.len()];
        self.formula.eval(&mut |a: &Atom| {
            let s = *cache[a.poly].get_or_insert_with(|| self.polys[a.poly].sign_at(x));
            a.holds(s)
        })
    }

    pub fn contains_float(&self, x: &[f64]) -> bool {
        self.formula.eval(&mut |a: &Atom| {
            let v = self.polys[a.poly].eval(x);
            a.holds(v.partial_cmp(&0.0).unwrap_or(Ordering::Less))
        })
    }

    /// Truth of the formula over the whole box `[lo, hi]`; `Unknown` when not certified.
    pub fn truth_over(&self, lo: &[f64], hi: &[f64]) -> Tri {
        let mut cache: Vec<Option<(bool, bool)>> = vec![None; self.polys.len()];
        self.formula.eval3(&mut |a: &Atom| {
            // (certainly >= 0 everywhere, certainly < 0 everywhere)
            let (all_nonneg, all_neg) =
                *cache[a.poly].get_or_insert_with(|| sign_bounds(&self.polys[a.poly], lo, hi));
            match (a.sign, all_nonneg, all_neg) {
                (AtomSign::Nonneg, true, _) => Tri::True,
                (AtomSign::Nonneg, _, true) => Tri::False,
                (AtomSign::Neg, _, true) => Tri::True,
                (AtomSign::Neg, true, _) => Tri::False,
                _ => Tri::Unknown,
            }
        })
    }
}

/// Whether `p` is certainly non-negative, or certainly negative, on the box.
fn sign_bounds(p: &Polynomial, lo: &[f64], hi: &[f64]) -> (bool, bool) {
    if p.is_multilinear() {
        let mut all_nonneg = true;
        let mut all_neg = true;
        for corner in box_corners(lo, hi) {
            match p.sign_at(&corner) {
                Ordering::Less => all_nonneg = false,
                _ => all_neg = false,
            }
            if !all_nonneg && !all_neg {
                break;
            }
        }
        (all_nonneg, all_neg)
    } else if lo == hi {
        let s = p.sign_at(lo);
        (s != Ordering::Less, s == Ordering::Less)
    } else {
        // Mixed signs at two corners settle it; otherwise fall back to the enclosure.
        let s_lo = p.sign_at(lo);
        let s_hi = p.sign_at(hi);
        if (s_lo == Ordering::Less) != (s_hi == Ordering::Less) {
            return (false, false);
        }
        let r = p.range_over(lo, hi);
        (r.lo >= 0.0, r.hi < 0.0)
    }
}

/// Corners of a closed box; degenerate axes contribute a single value.
pub fn box_corners(lo: &[f64], hi: &[f64]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::with_capacity(lo.len())];
    for (&a, &b) in lo.iter().zip(hi) {
        if a == b {
            out.iter_mut().for_each(|c| c.push(a));
        } else {
            let mut next = Vec::with_capacity(out.len() * 2);
            for c in out {
                let mut c2 = c.clone();
                let mut c1 = c;
                c1.push(a);
                c2.push(b);
                next.push(c1);
                next.push(c2);
            }
            out = next;
        }
    }
    out
}

// Serialized form: {"dim": d, "terms": [{"exp": [..], "coef": 1.5 | "p/q"}]}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoefRepr {
    Float(f64),
    Exact(String),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: CoefRepr,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::invalid(format!("bad rational coefficient {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|t| TermRepr {
                exp: t.exps.clone(),
                coef: if t.approx.is_finite() && rat(t.approx) == t.coef {
                    CoefRepr::Float(t.approx)
                } else {
                    CoefRepr::Exact(format!("{}/{}", t.coef.numer(), t.coef.denom()))
                },
            })
            .collect();
        PolyRepr {
            dim: self.dim,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c = match t.coef {
                CoefRepr::Float(f) if f.is_finite() => rat(f),
                CoefRepr::Float(_) => return Err(D::Error::custom("non-finite coefficient")),
                CoefRepr::Exact(s) => parse_rational(&s).map_err(D::Error::custom)?,
            };
            terms.push((t.exp, c));
        }
        Polynomial::from_rational(repr.dim, terms).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SignSetRepr {
    dim: usize,
    polys: Vec<Polynomial>,
    formula: Formula,
}

impl Serialize for SignSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SignSetRepr {
            dim: self.dim,
            polys: self.polys.clone(),
            formula: self.formula.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SignSetRepr::deserialize(d)?;
        SignSet::new(r.dim, r.polys, r.formula).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2_plus_y() -> Polynomial {
        Polynomial::new(2, [(vec![2, 0], 1.0), (vec![0, 1], 1.0)]).unwrap()
    }

    #[test]
    fn evaluates_examples() {
        assert_eq!(x2_plus_y().eval(&[2.0, 3.0]), 7.0);
        assert_eq!(x2_plus_y().eval_exact(&[2.0, 3.0]), rat(7.0));
        let c = Polynomial::constant(3, 5.0).unwrap();
        assert_eq!(c.eval(&[1.0, -2.0, 9.0]), 5.0);
        let xy1 = Polynomial::new(2, [(vec![1, 1], 1.0), (vec![0, 0], -1.0)]).unwrap();
        assert_eq!(xy1.eval(&[1.0, 1.0]), 0.0);
        assert_eq!(xy1.sign_at(&[1.0, 1.0]), Ordering::Equal);
    }

    #[test]
    fn merges_and_drops_zero_terms() {
        let p = Polynomial::new(1, [(vec![1], 2.0), (vec![1], -2.0), (vec![0], 1.0)]).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn rejects_wrong_exponent_length() {
        assert!(Polynomial::new(2, [(vec![1], 1.0)]).is_err());
    }

    #[test]
    fn interval_power_of_straddling_interval() {
        let x = Interval::new(-2.0, 1.0);
        let sq = x.pow(2);
        assert!(sq.lo <= 0.0 && sq.hi >= 4.0 && sq.hi < 4.0001);
        let cube = x.pow(3);
        assert!(cube.lo <= -8.0 && cube.hi >= 1.0);
    }

    #[test]
    fn range_encloses_samples() {
        let p = Polynomial::new(2, [(vec![2, 1], 3.0), (vec![0, 3], -1.0), (vec![1, 0], 0.5)]).unwrap();
        let (lo, hi) = ([-1.0, 0.5], [2.0, 1.5]);
        let r = p.range_over(&lo, &hi);
        for i in 0..=20 {
            for j in 0..=20 {
                let x = [lo[0] + 3.0 * i as f64 / 20.0, lo[1] + j as f64 / 20.0];
                let v = p.eval(&x);
                assert!(r.lo <= v && v <= r.hi);
            }
        }
    }

    #[test]
    fn polynomial_json_round_trip_keeps_exact_coefficients() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let p = Polynomial::from_rational(1, [(vec![1], third.clone())]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("1/3"));
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back.terms()[0].coef, third);
    }

    #[test]
    fn three_valued_formula() {
        let f = Formula::And(vec![
            Formula::atom(0, AtomSign::Nonneg),
            Formula::Or(vec![Formula::atom(1, AtomSign::Neg)]),
        ]);
        let r = f.eval3(&mut |a: &Atom| if a.poly == 0 { Tri::True } else { Tri::Unknown });
        assert_eq!(r, Tri::Unknown);
        assert!(Formula::always().eval(&mut |_| false));
        assert!(!Formula::never().eval(&mut |_| true));
    }

    #[test]
    fn corners_skip_degenerate_axes() {
        assert_eq!(box_corners(&[0.0, 1.0, 2.0], &[1.0, 1.0, 3.0]).len(), 4);
    }
}
