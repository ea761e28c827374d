//! The exact scalar fields (rationals, radical sums, quadratic surds) plus
//! `f64` for the numeric fallback.

mod quadratic;
mod radical;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

pub use quadratic::{solve_monic_quadratic, QuadRational, QuadraticRoots};
pub use radical::{
    canonicalize_radical, canonicalize_radical_with, radical_add, radical_mul, sqrt_rational, square_free_split,
    FactorLimits, RadicalSum, RadicalTerm,
};
pub use rational::{
    common_denominator, frac, int, parse_rational, rational_sqrt, rational_to_f64, render_rational, Rational,
};

use crate::error::{Error, Result};

/// Matrix entry type. Zero and one are produced relative to an existing
/// element because a quadratic-surd field is only known at runtime.
pub trait Element:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn to_scalar(&self) -> Scalar;
}

/// Elements with a multiplicative inverse for every nonzero value.
pub trait Field: Element {
    fn inv(&self) -> Option<Self>;
}

/// Element types whose zero and one need no context.
pub trait Unital: Element {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
}

impl Element for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Unital for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
}

impl Element for RadicalSum {
    fn zero_like(&self) -> Self {
        RadicalSum::zero()
    }
    fn one_like(&self) -> Self {
        RadicalSum::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        RadicalSum::from_rational(r.clone())
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Radical(self.clone())
    }
}

impl Unital for RadicalSum {
    fn zero_elem() -> Self {
        RadicalSum::zero()
    }
    fn one_elem() -> Self {
        RadicalSum::one()
    }
}

impl Element for QuadRational {
    fn zero_like(&self) -> Self {
        QuadRational::from_rational(Rational::zero(), self.radicand())
    }
    fn one_like(&self) -> Self {
        QuadRational::from_rational(Rational::one(), self.radicand())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        QuadRational::from_rational(r.clone(), self.radicand())
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Quadratic(self.clone())
    }
}

impl Field for QuadRational {
    fn inv(&self) -> Option<Self> {
        QuadRational::inv(self)
    }
}

impl Element for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn is_zero_elem(&self) -> bool {
        *self == 0.0
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        rational_to_f64(r).unwrap_or(f64::NAN)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }
}

impl Field for f64 {
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}

impl Unital for f64 {
    fn zero_elem() -> Self {
        0.0
    }
    fn one_elem() -> Self {
        1.0
    }
}

/// A scalar from any supported field, used where values from different
/// computations meet: comparisons, traces and reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Radical(RadicalSum),
    Quadratic(QuadRational),
    Float(f64),
}

impl Scalar {
    pub fn to_float(&self) -> Result<f64> {
        to_float(self)
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Radical(s) => s.as_rational(),
            Scalar::Quadratic(q) => q.as_rational().cloned(),
            Scalar::Float(_) => None,
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&render_rational(r)),
            Scalar::Radical(s) => s.fmt(f),
            Scalar::Quadratic(q) => q.fmt(f),
            Scalar::Float(x) => x.fmt(f),
        }
    }
}

/// Round-to-nearest conversion to `f64`.
pub fn to_float(x: &Scalar) -> Result<f64> {
    match x {
        Scalar::Rational(r) => rational_to_f64(r),
        Scalar::Radical(s) => s.to_f64(),
        Scalar::Quadratic(q) => q.to_f64(),
        Scalar::Float(v) => Ok(*v),
    }
}

enum Comparable {
    Term(RadicalTerm),
    Quad(QuadRational),
    Float(f64),
}

fn comparable(x: &Scalar) -> Result<Comparable> {
    match x {
        Scalar::Rational(r) => Ok(Comparable::Term(RadicalTerm {
            coeff: r.clone(),
            radicand: BigUint::one(),
        })),
        Scalar::Radical(s) => s.as_term().map(Comparable::Term).ok_or(Error::IncomparableFields),
        Scalar::Quadratic(q) => Ok(Comparable::Quad(q.clone())),
        Scalar::Float(v) => Ok(Comparable::Float(*v)),
    }
}

fn term_as_quad(t: &RadicalTerm, d: &BigUint) -> Option<QuadRational> {
    if t.radicand.is_one() {
        Some(QuadRational::from_rational(t.coeff.clone(), d))
    } else if &t.radicand == d {
        Some(QuadRational::new_unchecked(
            Rational::zero(),
            t.coeff.clone(),
            d.clone(),
        ))
    } else {
        None
    }
}

fn compare_terms(x: &RadicalTerm, y: &RadicalTerm) -> Ordering {
    let sx = x.coeff.signum();
    let sy = y.coeff.signum();
    if sx != sy {
        return sx.cmp(&sy);
    }
    let rx = Rational::from_integer(BigInt::from(x.radicand.clone()));
    let ry = Rational::from_integer(BigInt::from(y.radicand.clone()));
    let mx = &x.coeff * &x.coeff * rx;
    let my = &y.coeff * &y.coeff * ry;
    if x.coeff.is_negative() {
        my.cmp(&mx)
    } else {
        mx.cmp(&my)
    }
}

/// Exact ordering within one field. Rationals embed into radical terms and
/// into any quadratic extension; multi-term radical sums, mismatched
/// extensions and float/exact pairs are rejected.
pub fn compare(x: &Scalar, y: &Scalar) -> Result<Ordering> {
    match (comparable(x)?, comparable(y)?) {
        (Comparable::Term(a), Comparable::Term(b)) => Ok(compare_terms(&a, &b)),
        (Comparable::Quad(a), Comparable::Quad(b)) => {
            let diff = a.checked_add(&-b).map_err(|_| Error::IncomparableFields)?;
            Ok(diff.signum().cmp(&0))
        }
        (Comparable::Quad(a), Comparable::Term(b)) => {
            let b = term_as_quad(&b, a.radicand()).ok_or(Error::IncomparableFields)?;
            Ok((a - b).signum().cmp(&0))
        }
        (Comparable::Term(a), Comparable::Quad(b)) => {
            let a = term_as_quad(&a, b.radicand()).ok_or(Error::IncomparableFields)?;
            Ok((a - b).signum().cmp(&0))
        }
        (Comparable::Float(a), Comparable::Float(b)) => a.partial_cmp(&b).ok_or(Error::IncomparableFields),
        _ => Err(Error::IncomparableFields),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radical(c: i64, r: i64) -> Scalar {
        Scalar::Radical(RadicalSum::from_term(
            canonicalize_radical(&int(c), &BigInt::from(r)).unwrap(),
        ))
    }

    #[test]
    fn compares_surds_by_squares() {
        // 5√2 = √50 > √49 = 7
        assert_eq!(
            compare(&radical(5, 2), &Scalar::Rational(int(7))).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            compare(&radical(-5, 2), &Scalar::Rational(int(-7))).unwrap(),
            Ordering::Less
        );
        assert_eq!(compare(&radical(-1, 2), &radical(1, 3)).unwrap(), Ordering::Less);
        assert_eq!(
            compare(&Scalar::Rational(int(3)), &Scalar::Rational(int(3))).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn compares_conjugates() {
        let QuadraticRoots::Conjugate(hi, lo) = solve_monic_quadratic(&int(-15), &int(10)).unwrap() else {
            panic!()
        };
        let hi = Scalar::Quadratic(hi);
        let lo = Scalar::Quadratic(lo);
        assert_eq!(compare(&hi, &lo).unwrap(), Ordering::Greater);
        assert_eq!(compare(&lo, &Scalar::Rational(int(0))).unwrap(), Ordering::Greater);
        assert_eq!(compare(&lo, &Scalar::Rational(int(1))).unwrap(), Ordering::Less);
        assert_eq!(compare(&Scalar::Rational(int(15)), &hi).unwrap(), Ordering::Greater);
    }

    #[test]
    fn rejects_incomparable_inputs() {
        let two_terms =
            Scalar::Radical(RadicalSum::from_terms([(int(1), BigInt::from(2)), (int(1), BigInt::from(3))]).unwrap());
        assert!(matches!(
            compare(&two_terms, &Scalar::Rational(int(1))),
            Err(Error::IncomparableFields)
        ));
        assert!(matches!(
            compare(&Scalar::Float(1.0), &Scalar::Rational(int(1))),
            Err(Error::IncomparableFields)
        ));
        let q2 = Scalar::Quadratic(QuadRational::new(int(0), int(1), BigUint::from(2u32)).unwrap());
        let q3 = Scalar::Quadratic(QuadRational::new(int(0), int(1), BigUint::from(3u32)).unwrap());
        assert!(compare(&q2, &q3).is_err());
        assert!(compare(&q2, &radical(1, 3)).is_err());
        assert_eq!(compare(&q2, &radical(1, 2)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn float_conversions() {
        assert_eq!(to_float(&Scalar::Rational(int(0))).unwrap(), 0.0);
        let x = to_float(&radical(5, 2)).unwrap();
        assert!((x - 7.0710678118654755).abs() <= 2.0 * f64::EPSILON * 7.0);
        let QuadraticRoots::Conjugate(hi, lo) = solve_monic_quadratic(&int(-15), &int(10)).unwrap() else {
            panic!()
        };
        let expected_hi = (15.0 + 185f64.sqrt()) / 2.0;
        assert!((hi.to_f64().unwrap() - expected_hi).abs() < 1e-12);
        assert!((lo.to_f64().unwrap() - (15.0 - 185f64.sqrt()) / 2.0).abs() < 1e-12);
        let huge = Scalar::Rational(Rational::from_integer(num_traits::pow(BigInt::from(10), 400)));
        assert!(matches!(to_float(&huge), Err(Error::Overflow(_))));
    }
}
