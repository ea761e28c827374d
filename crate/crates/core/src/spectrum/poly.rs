use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{common_denominator, render_rational, Element, Rational};

/// Monic polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coefficients: Vec<Rational>,
}

impl CharPoly {
    /// `coefficients[i]` multiplies `xⁱ`; the last entry must be one.
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        match coefficients.last() {
            Some(c) if c.is_one() => Ok(CharPoly { coefficients }),
            _ => Err(Error::dims("CharPoly::new", "polynomial must be monic")),
        }
    }

    /// Monic polynomial from integer coefficients, lowest degree first.
    pub fn from_i64(coefficients: &[i64]) -> Result<Self> {
        Self::new(coefficients.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn one() -> Self {
        CharPoly {
            coefficients: vec![Rational::one()],
        }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation in any field that contains the rationals.
    pub fn eval<T: Element>(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for c in self.coefficients.iter().rev() {
            acc = acc * x.clone() + x.from_rational_like(c);
        }
        acc
    }

    /// `p(A)` by Horner's scheme on matrices.
    pub fn eval_matrix(&self, a: &Matrix<Rational>) -> Result<Matrix<Rational>> {
        let n = a.row_count();
        let mut acc = Matrix::<Rational>::zeros(n, n);
        for c in self.coefficients.iter().rev() {
            acc = acc.matmul(a)?.add(&Matrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// Synthetic division by `x − r`, returning quotient and remainder.
    pub fn deflate(&self, r: &Rational) -> (CharPoly, Rational) {
        let mut quotient = Vec::with_capacity(self.degree());
        let mut carry = Rational::zero();
        for c in self.coefficients.iter().rev() {
            carry = &carry * r + c;
            quotient.push(carry.clone());
        }
        let remainder = quotient.pop().unwrap_or_default();
        quotient.reverse();
        (CharPoly { coefficients: quotient }, remainder)
    }

    /// Product with `(x − r)^mult`.
    pub fn times_linear(&self, r: &Rational, mult: usize) -> CharPoly {
        let mut c = self.coefficients.clone();
        for _ in 0..mult {
            let mut next = vec![Rational::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
        CharPoly { coefficients: c }
    }
}

impl fmt::Display for CharPoly {
    /// `x^3 - 5*x^2 + 7*x - 3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                f.write_str(&render_rational(&magnitude))?;
            } else if magnitude.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{}*{power}", render_rational(&magnitude))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Faddeev–LeVerrier: `M₀ = 0`, `Mₖ = A·Mₖ₋₁ + cₙ₋ₖ₊₁·I`,
/// `cₙ₋ₖ = −tr(A·Mₖ)/k`.
pub fn characteristic_polynomial(a: &Matrix<Rational>) -> Result<CharPoly> {
    if !a.is_square() {
        return Err(Error::dims(
            "characteristic_polynomial",
            format!("{}x{} is not square", a.row_count(), a.col_count()),
        ));
    }
    let n = a.row_count();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let identity = Matrix::<Rational>::identity(n);
    let mut m = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        m = a.matmul(&m)?.add(&identity.scale(&c[n - k + 1]))?;
        let am = a.matmul(&m)?;
        let tr = am.trace().unwrap_or_default();
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    Ok(CharPoly { coefficients: c })
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    if let Some(small) = n.to_u64() {
        let mut low = Vec::new();
        let mut high = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                low.push(BigInt::from(d));
                if d != small / d {
                    high.push(BigInt::from(small / d));
                }
            }
            d += 1;
        }
        low.extend(high.into_iter().rev());
        return low;
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        let (q, r) = n.div_rem(&d);
        if r.is_zero() {
            out.push(d.clone());
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Rational root theorem on the primitive integer form, with synthetic
/// deflation. Roots come back in descending order with multiplicities.
pub fn rational_roots(p: &CharPoly) -> (Vec<(Rational, usize)>, CharPoly) {
    let mut remainder = p.clone();
    let mut roots: Vec<(Rational, usize)> = Vec::new();

    let mut zero_mult = 0;
    while remainder.degree() > 0 && remainder.coefficients[0].is_zero() {
        remainder.coefficients.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }

    if remainder.degree() > 0 {
        let den = common_denominator(&remainder.coefficients);
        let ints: Vec<BigInt> = remainder
            .coefficients
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let numerators = divisors(&ints[0]);
        let denominators = divisors(ints.last().expect("nonempty"));
        let mut candidates: Vec<Rational> = Vec::new();
        for q in &denominators {
            for p in &numerators {
                let r = Rational::new(p.clone(), q.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let mut mult = 0;
            loop {
                if remainder.degree() == 0 {
                    break;
                }
                let (q, rem) = remainder.deflate(&r);
                if !rem.is_zero() {
                    break;
                }
                remainder = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
    }
    roots.sort_by(|a, b| b.0.cmp(&a.0));
    (roots, remainder)
}
