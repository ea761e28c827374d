//! Numbers `a + b√d` in a fixed real quadratic extension.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::radical::{render_term, square_free_split, FactorLimits};
use super::rational::{rational_sqrt, rational_to_f64, render_rational, Rational};
use crate::error::{Error, Result};

/// `a + b√d` with `d > 1` square-free.
///
/// A value with `b = 0` is a rational and combines with any extension; two
/// values with nonzero surd parts must share `d`. Arithmetic between two
/// different extensions panics, since every computation is confined to a
/// single extension; use [`QuadRational::checked_add`] and friends where the
/// inputs are not known to agree.
#[derive(Debug, Clone)]
pub struct QuadRational {
    a: Rational,
    b: Rational,
    d: BigUint,
}

impl QuadRational {
    /// Fails unless `d` is square-free and greater than one.
    pub fn new(a: Rational, b: Rational, d: BigUint) -> Result<Self> {
        let (square, _) = square_free_split(&d, &FactorLimits::default())?;
        if d <= BigUint::one() || !square.is_one() {
            return Err(Error::FieldMismatch(format!(
                "{d} is not a square-free radicand greater than 1"
            )));
        }
        Ok(QuadRational { a, b, d })
    }

    pub(crate) fn new_unchecked(a: Rational, b: Rational, d: BigUint) -> Self {
        QuadRational { a, b, d }
    }

    pub fn from_rational(a: Rational, d: &BigUint) -> Self {
        QuadRational {
            a,
            b: Rational::zero(),
            d: d.clone(),
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigUint {
        &self.d
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadRational {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// `a² − b²d`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * self.d_rational()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(QuadRational {
            a: c.a / &n,
            b: c.b / &n,
            d: c.d,
        })
    }

    pub fn signum(&self) -> i8 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa >= 0 && sb >= 0 {
            return if sa == 0 && sb == 0 { 0 } else { 1 };
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        // Opposite signs: compare a² against b²d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * self.d_rational();
        let dominant_a = a2 > b2d;
        if dominant_a {
            sa
        } else {
            sb
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        let a = rational_to_f64(&self.a)?;
        let b = rational_to_f64(&self.b)?;
        let d = rational_to_f64(&self.d_rational())?;
        let x = a + b * d.sqrt();
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Overflow(self.to_string()))
        }
    }

    fn d_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.d.clone()))
    }

    fn joint_radicand(&self, other: &Self) -> Result<BigUint> {
        if self.b.is_zero() {
            Ok(other.d.clone())
        } else if other.b.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::FieldMismatch(format!(
                "quadratic extensions sqrt({}) and sqrt({}) differ",
                self.d, other.d
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        Ok(QuadRational {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        let dr = Rational::from_integer(BigInt::from(d.clone()));
        Ok(QuadRational {
            a: &self.a * &other.a + &self.b * &other.b * dr,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        })
    }
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialEq for QuadRational {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadRational {}

impl Hash for QuadRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl Add for QuadRational {
    type Output = QuadRational;
    fn add(self, rhs: QuadRational) -> QuadRational {
        self.checked_add(&rhs).expect("mixed quadratic extensions")
    }
}

impl Sub for QuadRational {
    type Output = QuadRational;
    fn sub(self, rhs: QuadRational) -> QuadRational {
        self.checked_add(&-rhs).expect("mixed quadratic extensions")
    }
}

impl Mul for QuadRational {
    type Output = QuadRational;
    fn mul(self, rhs: QuadRational) -> QuadRational {
        self.checked_mul(&rhs).expect("mixed quadratic extensions")
    }
}

impl Neg for QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        QuadRational {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&render_rational(&self.a));
        }
        let surd = render_term(&self.b.abs(), &self.d);
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            return write!(f, "({sign}{surd})");
        }
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "({} {op} {surd})", render_rational(&self.a))
    }
}

/// Roots of a monic quadratic, in descending order.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadraticRoots {
    Rational(Rational, Rational),
    Conjugate(QuadRational, QuadRational),
}

/// Solves `x² + p·x + q = 0` exactly.
pub fn solve_monic_quadratic(p: &Rational, q: &Rational) -> Result<QuadraticRoots> {
    let two = Rational::from_integer(BigInt::from(2));
    let four = Rational::from_integer(BigInt::from(4));
    let disc = p * p - four * q;
    if disc.is_negative() {
        return Err(Error::ComplexRootsUnsupported {
            discriminant: render_rational(&disc),
        });
    }
    let half_p = p / &two;
    if let Some(root) = rational_sqrt(&disc) {
        let half_root = root / &two;
        return Ok(QuadraticRoots::Rational(-&half_p + &half_root, -&half_p - &half_root));
    }
    // √(n/m) = √(n·m)/m = (s/m)·√d
    let den = disc.denom().clone();
    let product = disc.numer() * &den;
    let (square, d) = square_free_split(product.magnitude(), &FactorLimits::default())?;
    let coeff = Rational::new(BigInt::from(square), den) / &two;
    let plus = QuadRational::new_unchecked(-&half_p, coeff.clone(), d.clone());
    let minus = QuadRational::new_unchecked(-half_p, -coeff, d);
    Ok(QuadraticRoots::Conjugate(plus, minus))
}
