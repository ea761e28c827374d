//! Helpers around arbitrary-precision rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7"`, `"+2"`, `"p/q"` and finite decimals such as `"2.5"`
/// or `"-0.125"`. Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim())?;
        let den = parse_integer(den.trim())?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        let (negative, whole) = strip_sign(whole);
        if !(whole.is_empty() || whole.bytes().all(|b| b.is_ascii_digit())) {
            return None;
        }
        if fraction.is_empty() && whole.is_empty() {
            return None;
        }
        if !fraction.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{whole}{fraction}");
        let mut num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), fraction.len());
        return Some(Rational::new(num, den));
    }
    parse_integer(s).map(Rational::from_integer)
}

fn strip_sign(s: &str) -> (bool, &str) {
    if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (false, rest)
    } else {
        (false, s)
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let (negative, digits) = strip_sign(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let magnitude: BigInt = digits.parse().ok()?;
    Some(if negative { -magnitude } else { magnitude })
}

/// `"n"` for integers, `"p/q"` otherwise.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> Result<f64> {
    match r.to_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Overflow(render_rational(r))),
    }
}

/// Exact square root when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt_exact(r.numer())?;
    let d = integer_sqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

pub fn to_biguint(n: &BigInt) -> Option<BigUint> {
    match n.sign() {
        Sign::Minus => None,
        _ => Some(n.magnitude().clone()),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_entry_grammar() {
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational("-1/2"), Some(frac(-1, 2)));
        assert_eq!(parse_rational("2.5"), Some(frac(5, 2)));
        assert_eq!(parse_rational("-0.125"), Some(frac(-1, 8)));
        assert_eq!(parse_rational(".5"), Some(frac(1, 2)));
        assert_eq!(parse_rational("4/-6"), Some(frac(-2, 3)));
        for bad in ["", "1/0", "abc", "1.2.3", "--1", "1e5", "-", "."] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn renders_lowest_terms() {
        assert_eq!(render_rational(&frac(6, -4)), "-3/2");
        assert_eq!(render_rational(&int(0)), "0");
        assert_eq!(render_rational(&frac(10, 5)), "2");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
}
