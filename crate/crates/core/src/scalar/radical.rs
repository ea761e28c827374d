//! Canonical radical expressions `Σ cᵢ√rᵢ` over square-free radicands.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{rational_to_f64, render_rational, to_biguint, Rational};
use crate::error::{Error, Result};

/// Bounds for square-free extraction by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorLimits {
    /// Largest trial divisor.
    pub trial_limit: u64,
    /// Largest cofactor accepted once trial division is exhausted.
    pub residual_limit: u64,
}

impl Default for FactorLimits {
    fn default() -> Self {
        FactorLimits {
            trial_limit: 1_000_000,
            residual_limit: 1_000_000_000,
        }
    }
}

/// Splits `n = s² · r` with `r` square-free.
pub fn square_free_split(n: &BigUint, limits: &FactorLimits) -> Result<(BigUint, BigUint)> {
    if n.is_zero() {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    if let Some(small) = n.to_u64() {
        return split_u64(small, limits)
            .map(|(s, r)| (BigUint::from(s), BigUint::from(r)))
            .ok_or_else(|| Error::RadicandTooLarge {
                radicand: n.to_string(),
            });
    }
    split_big(n, limits)
}

fn split_u64(mut n: u64, limits: &FactorLimits) -> Option<(u64, u64)> {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p <= limits.trial_limit && p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            square = square.checked_mul(p.checked_pow(e / 2)?)?;
            if e % 2 == 1 {
                free = free.checked_mul(p)?;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        // Either n < p² (so n is prime) or trial division stopped at the limit.
        if p.saturating_mul(p) <= n && n > limits.residual_limit {
            return None;
        }
        free = free.checked_mul(n)?;
    }
    Some((square, free))
}

fn split_big(n: &BigUint, limits: &FactorLimits) -> Result<(BigUint, BigUint)> {
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = 2u64;
    loop {
        let pb = BigUint::from(p);
        if p > limits.trial_limit || &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            square *= pb.pow(e / 2);
            if e % 2 == 1 {
                free *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let pb = BigUint::from(p);
        if &pb * &pb <= rest && rest > BigUint::from(limits.residual_limit) {
            return Err(Error::RadicandTooLarge {
                radicand: n.to_string(),
            });
        }
        free *= rest;
    }
    Ok((square, free))
}

/// A single term `coeff · √radicand` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadicalTerm {
    pub coeff: Rational,
    pub radicand: BigUint,
}

impl RadicalTerm {
    pub fn zero() -> Self {
        RadicalTerm {
            coeff: Rational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> Result<f64> {
        let squared = &self.coeff * &self.coeff * Rational::from_integer(BigInt::from(self.radicand.clone()));
        let magnitude = rational_to_f64(&squared)?.sqrt();
        Ok(if self.coeff.is_negative() {
            -magnitude
        } else {
            magnitude
        })
    }
}

impl fmt::Display for RadicalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(&self.coeff, &self.radicand))
    }
}

pub(crate) fn render_term(coeff: &Rational, radicand: &BigUint) -> String {
    if radicand.is_one() {
        return render_rational(coeff);
    }
    if coeff.is_one() {
        format!("sqrt({radicand})")
    } else if (-coeff).is_one() {
        format!("-sqrt({radicand})")
    } else {
        format!("{}*sqrt({radicand})", render_rational(coeff))
    }
}

/// Rewrites `c·√r` as `(c·s)·√r′` where `r = s²·r′` and `r′` is square-free.
pub fn canonicalize_radical(coeff: &Rational, radicand: &BigInt) -> Result<RadicalTerm> {
    canonicalize_radical_with(coeff, radicand, &FactorLimits::default())
}

pub fn canonicalize_radical_with(coeff: &Rational, radicand: &BigInt, limits: &FactorLimits) -> Result<RadicalTerm> {
    let r = to_biguint(radicand).ok_or_else(|| Error::FieldEscape(format!("sqrt of negative {radicand}")))?;
    if r.is_zero() || coeff.is_zero() {
        return Ok(RadicalTerm::zero());
    }
    let (square, free) = square_free_split(&r, limits)?;
    Ok(RadicalTerm {
        coeff: coeff * Rational::from_integer(BigInt::from(square)),
        radicand: free,
    })
}

/// `√q` for a nonnegative rational, via `√(p/q) = √(pq)/q`.
pub fn sqrt_rational(q: &Rational) -> Result<RadicalTerm> {
    if q.is_negative() {
        return Err(Error::FieldEscape(format!("sqrt of negative {}", render_rational(q))));
    }
    let den = q.denom().clone();
    let radicand = q.numer() * &den;
    canonicalize_radical(&Rational::new(BigInt::one(), den), &radicand)
}

/// A finite sum `Σ cᵢ√rᵢ` keyed by distinct square-free radicands in
/// increasing order. Zero coefficients are never stored, so structural
/// equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalSum {
    terms: BTreeMap<BigUint, Rational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum::default()
    }

    pub fn one() -> Self {
        RadicalSum::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        RadicalSum::from_term(RadicalTerm {
            coeff: r,
            radicand: BigUint::one(),
        })
    }

    pub fn from_term(term: RadicalTerm) -> Self {
        let mut terms = BTreeMap::new();
        if !term.coeff.is_zero() {
            terms.insert(term.radicand, term.coeff);
        }
        RadicalSum { terms }
    }

    /// Builds a sum from arbitrary terms, canonicalizing each radicand.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, BigInt)>) -> Result<Self> {
        let mut sum = RadicalSum::zero();
        for (c, r) in terms {
            sum = sum + RadicalSum::from_term(canonicalize_radical(&c, &r)?);
        }
        Ok(sum)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_term(&self) -> Option<RadicalTerm> {
        match self.terms.len() {
            0 => Some(RadicalTerm::zero()),
            1 => self.terms.iter().next().map(|(r, c)| RadicalTerm {
                coeff: c.clone(),
                radicand: r.clone(),
            }),
            _ => None,
        }
    }

    /// Multiplicative inverse of a single nonzero term: `1/(c√r) = √r/(c·r)`.
    pub fn inv_term(&self) -> Option<RadicalSum> {
        let term = self.as_term()?;
        if term.is_zero() {
            return None;
        }
        let r = Rational::from_integer(BigInt::from(term.radicand.clone()));
        Some(RadicalSum::from_term(RadicalTerm {
            coeff: (term.coeff * r).recip(),
            radicand: term.radicand,
        }))
    }

    pub fn scale(&self, k: &Rational) -> RadicalSum {
        if k.is_zero() {
            return RadicalSum::zero();
        }
        RadicalSum {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * k)).collect(),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        if let Some(term) = self.as_term() {
            return term.to_f64();
        }
        let mut total = 0.0;
        for (r, c) in &self.terms {
            total += RadicalTerm {
                coeff: c.clone(),
                radicand: r.clone(),
            }
            .to_f64()?;
        }
        if total.is_finite() {
            Ok(total)
        } else {
            Err(Error::Overflow(self.to_string()))
        }
    }

    fn insert(&mut self, radicand: BigUint, coeff: Rational) {
        let slot = self.terms.entry(radicand.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&radicand);
        }
    }
}

/// Termwise merge by radicand.
pub fn radical_add(x: &RadicalSum, y: &RadicalSum) -> RadicalSum {
    let mut out = x.clone();
    for (r, c) in &y.terms {
        out.insert(r.clone(), c.clone());
    }
    out
}

/// Bilinear expansion. For square-free `a`, `b` with `g = gcd(a, b)`,
/// `√a·√b = g·√((a/g)(b/g))` and the new radicand is again square-free, so
/// no factoring is needed.
pub fn radical_mul(x: &RadicalSum, y: &RadicalSum) -> RadicalSum {
    let mut out = RadicalSum::zero();
    for (ra, ca) in &x.terms {
        for (rb, cb) in &y.terms {
            let g = ra.gcd(rb);
            let radicand = (ra / &g) * (rb / &g);
            let coeff = ca * cb * Rational::from_integer(BigInt::from(g));
            out.insert(radicand, coeff);
        }
    }
    out
}

impl Add for RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: RadicalSum) -> RadicalSum {
        radical_add(&self, &rhs)
    }
}

impl Sub for RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: RadicalSum) -> RadicalSum {
        radical_add(&self, &(-rhs))
    }
}

impl Mul for RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: RadicalSum) -> RadicalSum {
        radical_mul(&self, &rhs)
    }
}

impl Neg for RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        RadicalSum {
            terms: self.terms.into_iter().map(|(r, c)| (r, -c)).collect(),
        }
    }
}

impl From<Rational> for RadicalSum {
    fn from(r: Rational) -> Self {
        RadicalSum::from_rational(r)
    }
}

impl From<RadicalTerm> for RadicalSum {
    fn from(t: RadicalTerm) -> Self {
        RadicalSum::from_term(t)
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (r, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                f.write_str(&render_term(c, r))?;
            } else if c.is_negative() {
                write!(f, " - {}", render_term(&-c, r))?;
            } else {
                write!(f, " + {}", render_term(c, r))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{frac, int};

    fn term(c: Rational, r: u64) -> RadicalSum {
        RadicalSum::from_term(canonicalize_radical(&c, &BigInt::from(r)).unwrap())
    }

    #[test]
    fn canonical_forms() {
        let t = canonicalize_radical(&int(1), &BigInt::from(50)).unwrap();
        assert_eq!((t.coeff.clone(), t.radicand.clone()), (int(5), BigUint::from(2u32)));
        assert_eq!(t.to_string(), "5*sqrt(2)");

        let t = canonicalize_radical(&int(1), &BigInt::from(1)).unwrap();
        assert_eq!(t.radicand, BigUint::one());
        assert_eq!(t.to_string(), "1");

        let t = canonicalize_radical(&int(2), &BigInt::from(12)).unwrap();
        assert_eq!(t.to_string(), "4*sqrt(3)");

        assert!(canonicalize_radical(&int(3), &BigInt::from(0)).unwrap().is_zero());
    }

    #[test]
    fn canonicalization_is_idempotent() {
        for r in 0..300u64 {
            let t = canonicalize_radical(&frac(3, 7), &BigInt::from(r)).unwrap();
            let again = canonicalize_radical(&t.coeff, &BigInt::from(t.radicand.clone())).unwrap();
            assert_eq!(t, again);
        }
    }

    #[test]
    fn residual_cofactor_bound() {
        let limits = FactorLimits {
            trial_limit: 100,
            residual_limit: 10_000,
        };
        // 101 * 103 has no factor <= 100 and exceeds the residual bound.
        let err = canonicalize_radical_with(&int(1), &BigInt::from(101 * 103), &limits);
        assert!(matches!(err, Err(Error::RadicandTooLarge { .. })));
        // A prime cofactor below the bound is accepted.
        let ok = canonicalize_radical_with(&int(1), &BigInt::from(4 * 9973), &limits).unwrap();
        assert_eq!(ok.to_string(), "2*sqrt(9973)");
        // Large composite beyond u64 still splits.
        let two64 = BigInt::from(1u128 << 64);
        let big: BigInt = &two64 * &two64 * BigInt::from(12);
        let t = canonicalize_radical(&int(1), &big).unwrap();
        assert_eq!(t.radicand, BigUint::from(3u32));
    }

    #[test]
    fn addition() {
        let s6 = term(frac(1, 6), 6);
        assert!(radical_add(&s6, &-s6.clone()).is_zero());

        let total = [frac(1, 3), frac(1, 2), frac(1, 6)]
            .into_iter()
            .map(RadicalSum::from_rational)
            .fold(RadicalSum::zero(), |a, b| a + b);
        assert_eq!(total, RadicalSum::one());

        let mixed = term(int(1), 2) + term(int(1), 3);
        assert_eq!(mixed.term_count(), 2);
        assert_eq!(mixed.to_string(), "sqrt(2) + sqrt(3)");
    }

    #[test]
    fn multiplication() {
        let r2 = term(int(1), 2);
        assert_eq!(radical_mul(&r2, &r2), RadicalSum::from_rational(int(2)));

        let a = term(frac(1, 3), 3);
        let b = term(frac(1, 2), 2);
        assert_eq!(radical_mul(&a, &b), term(frac(1, 6), 6));

        assert!(radical_mul(&(a + b), &RadicalSum::zero()).is_zero());
    }

    #[test]
    fn inverse_of_single_term() {
        let five_root_two = term(int(5), 2);
        let inv = five_root_two.inv_term().unwrap();
        assert_eq!(inv.to_string(), "1/10*sqrt(2)");
        assert_eq!(radical_mul(&inv, &five_root_two), RadicalSum::one());
        assert!(RadicalSum::zero().inv_term().is_none());
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(sqrt_rational(&frac(1, 2)).unwrap().to_string(), "1/2*sqrt(2)");
        assert_eq!(sqrt_rational(&int(49)).unwrap().to_string(), "7");
        assert!(sqrt_rational(&int(-1)).is_err());
    }

    #[test]
    fn float_conversion() {
        let t = canonicalize_radical(&int(5), &BigInt::from(2)).unwrap();
        let x = t.to_f64().unwrap();
        assert!((x - 7.0710678118654755).abs() <= f64::EPSILON * 8.0);
        assert_eq!(RadicalSum::zero().to_f64().unwrap(), 0.0);
    }
}
