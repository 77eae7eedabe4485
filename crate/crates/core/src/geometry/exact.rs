//! Filtered exact sign predicates.
//!
//! Each predicate evaluates in `f64` together with a forward error bound. When
//! the computed value clears the bound its sign is certain; otherwise the value
//! is recomputed over arbitrary-precision rationals. Every finite `f64` is a
//! dyadic rational, so the fallback is exact for the stored inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Unit roundoff for round-to-nearest `f64`.
pub(crate) const UNIT: f64 = f64::EPSILON / 2.0;

pub(crate) fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

pub(crate) fn rat_sign(x: &BigRational) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

pub(crate) fn rat_pow(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Sign of a value computed in floating point, if `bound` certifies it.
#[inline]
fn certified(value: f64, bound: f64) -> Option<Ordering> {
    if !value.is_finite() || !bound.is_finite() {
        return None;
    }
    if value > bound {
        Some(Ordering::Greater)
    } else if value < -bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Sign of `sum(coeffs[i] * x[i]) - rhs`.
pub fn linear_sign(coeffs: &[f64], x: &[f64], rhs: f64) -> Ordering {
    debug_assert_eq!(coeffs.len(), x.len());
    let mut value = -rhs;
    let mut magnitude = rhs.abs();
    for (c, xi) in coeffs.iter().zip(x) {
        let t = c * xi;
        value += t;
        magnitude += t.abs();
    }
    let ops = (coeffs.len() + 2) as f64;
    let bound = 2.0 * ops * UNIT * magnitude + ops * f64::MIN_POSITIVE;
    if let Some(s) = certified(value, bound) {
        return s;
    }
    let mut exact = -rat(rhs);
    for (c, xi) in coeffs.iter().zip(x) {
        exact += rat(*c) * rat(*xi);
    }
    rat_sign(&exact)
}

/// Sign of `radius^2 - |x - center|^2` (non-negative means inside the closed ball).
pub fn ball_sign(center: &[f64], radius: f64, x: &[f64]) -> Ordering {
    debug_assert_eq!(center.len(), x.len());
    let mut value = radius * radius;
    let mut magnitude = value;
    for (c, xi) in center.iter().zip(x) {
        let d = xi - c;
        let sq = d * d;
        value -= sq;
        magnitude += sq;
    }
    let ops = (2 * center.len() + 2) as f64;
    let bound = 4.0 * ops * UNIT * magnitude + ops * f64::MIN_POSITIVE;
    if let Some(s) = certified(value, bound) {
        return s;
    }
    let r = rat(radius);
    let mut exact = &r * &r;
    for (c, xi) in center.iter().zip(x) {
        let d = rat(*xi) - rat(*c);
        exact -= &d * &d;
    }
    rat_sign(&exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_sign_detects_exact_zero() {
        assert_eq!(linear_sign(&[2.0, -1.0], &[1.0, 2.0], 0.0), Ordering::Equal);
        // The stored 1/3 times 3 is slightly below 1, while the rounded product is 1.
        let third = 1.0 / 3.0;
        assert_eq!(3.0 * third, 1.0);
        assert_eq!(linear_sign(&[3.0], &[third], 1.0), Ordering::Less);
        assert_eq!(linear_sign(&[1.0], &[1e-300], 0.0), Ordering::Greater);
    }

    #[test]
    fn near_cancellation_goes_exact() {
        let a = 1.0 + f64::EPSILON;
        // a*a - (1 + 2eps) = eps^2 > 0, invisible in floating point.
        let s = linear_sign(&[a], &[a], 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(s, Ordering::Greater);
    }

    #[test]
    fn ball_sign_on_boundary() {
        assert_eq!(ball_sign(&[0.0, 0.0], 5.0, &[3.0, 4.0]), Ordering::Equal);
        assert_eq!(ball_sign(&[0.0, 0.0], 1.0, &[2.0, 0.0]), Ordering::Less);
        assert_eq!(ball_sign(&[0.5, 0.5], 0.25, &[0.5, 0.6]), Ordering::Greater);
    }
}
