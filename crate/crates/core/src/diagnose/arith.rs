use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::factorize::rational_direction;
use crate::matrix::{
    bareiss_determinant, cofactor_determinant, dot, float_determinant, inverse, primitive_integer_vector, ExactMatrix,
    Matrix,
};
use crate::scalar::{compare, Element, QuadRational, RadicalSum, Rational, Unital};
use crate::trace::Payload;

/// Claim components brought into a single arithmetic domain.
pub(crate) enum Lowered {
    Exact(Vec<Matrix<RadicalSum>>),
    Float(Vec<Matrix<f64>>),
}

pub(crate) fn quad_to_radical(q: &QuadRational) -> Result<RadicalSum> {
    RadicalSum::from_terms([
        (q.rational_part().clone(), BigInt::one()),
        (q.surd_coeff().clone(), BigInt::from(q.radicand().clone())),
    ])
}

pub(crate) fn lower(components: &[(&str, &ExactMatrix)]) -> Result<Lowered> {
    let floats: Vec<&str> = components
        .iter()
        .filter(|(_, m)| matches!(m, ExactMatrix::Float(_)))
        .map(|(name, _)| *name)
        .collect();
    if floats.is_empty() {
        let exact = components
            .iter()
            .map(|(_, m)| match m {
                ExactMatrix::Quadratic(q) => q.try_map(quad_to_radical),
                other => Ok(other.to_radical().expect("exact field")),
            })
            .collect::<Result<_>>()?;
        return Ok(Lowered::Exact(exact));
    }
    if floats.len() != components.len() {
        let exact: Vec<&str> = components
            .iter()
            .map(|(name, _)| *name)
            .filter(|name| !floats.contains(name))
            .collect();
        return Err(Error::FieldMixing(format!(
            "{} given as floats but {} exact",
            floats.join(", "),
            exact.join(", ")
        )));
    }
    Ok(Lowered::Float(
        components
            .iter()
            .map(|(_, m)| m.to_float().expect("float matrix"))
            .collect(),
    ))
}

/// The arithmetic the checks need from a claim domain: exact radical sums
/// compare with `==`, floats within a relative tolerance.
pub(crate) trait CheckNum: Element + Unital {
    const FLOAT: bool;

    fn approx(&self) -> f64;

    fn payload(&self) -> Payload;

    fn matrix_payload(m: &Matrix<Self>) -> Payload;

    fn vectors_payload(vs: &[Vec<Self>]) -> Payload;

    fn determinant(m: &Matrix<Self>) -> Result<Self>;

    fn try_inverse(m: &Matrix<Self>) -> Option<Matrix<Self>>;

    /// The exact rational matrix, when every entry is rational.
    fn rational_matrix(m: &Matrix<Self>) -> Option<Matrix<Rational>>;

    /// Integer direction of a column whose entries share one radical.
    fn primitive_direction(v: &[Self]) -> Option<Vec<Rational>>;

    fn as_radical(&self) -> Option<RadicalSum>;
}

impl CheckNum for RadicalSum {
    const FLOAT: bool = false;

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn payload(&self) -> Payload {
        Payload::radical(self)
    }

    fn matrix_payload(m: &Matrix<Self>) -> Payload {
        Payload::radical_matrix(m)
    }

    fn vectors_payload(vs: &[Vec<Self>]) -> Payload {
        Payload::radical_vectors(vs)
    }

    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        match Self::rational_matrix(m) {
            Some(r) => Ok(RadicalSum::from_rational(bareiss_determinant(&r)?)),
            None => cofactor_determinant(m),
        }
    }

    fn try_inverse(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        let r = Self::rational_matrix(m)?;
        let inv = inverse(&r).ok()?;
        Some(inv.map(|x| RadicalSum::from_rational(x.clone())))
    }

    fn rational_matrix(m: &Matrix<Self>) -> Option<Matrix<Rational>> {
        if m.entries().iter().all(|x| x.as_rational().is_some()) {
            Some(m.map(|x| x.as_rational().expect("checked")))
        } else {
            None
        }
    }

    fn primitive_direction(v: &[Self]) -> Option<Vec<Rational>> {
        rational_direction(v).map(|d| primitive_integer_vector(&d))
    }

    fn as_radical(&self) -> Option<RadicalSum> {
        Some(self.clone())
    }
}

impl CheckNum for f64 {
    const FLOAT: bool = true;

    fn approx(&self) -> f64 {
        *self
    }

    fn payload(&self) -> Payload {
        Payload::float(*self)
    }

    fn matrix_payload(m: &Matrix<Self>) -> Payload {
        Payload::float_matrix(m)
    }

    fn vectors_payload(vs: &[Vec<Self>]) -> Payload {
        Payload::float_vectors(vs)
    }

    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        float_determinant(m)
    }

    fn try_inverse(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        inverse(m).ok()
    }

    fn rational_matrix(m: &Matrix<Self>) -> Option<Matrix<Rational>> {
        m.try_map(|&x| Rational::from_float(x).ok_or_else(|| Error::Overflow(x.to_string())))
            .ok()
    }

    fn primitive_direction(_: &[Self]) -> Option<Vec<Rational>> {
        None
    }

    fn as_radical(&self) -> Option<RadicalSum> {
        None
    }
}

pub(crate) fn norm<T: CheckNum>(xs: &[T]) -> f64 {
    xs.iter().map(|x| x.approx().powi(2)).sum::<f64>().sqrt()
}

pub(crate) fn matrix_norm<T: CheckNum>(m: &Matrix<T>) -> f64 {
    norm(m.entries())
}

/// Equal for exact domains; within `tol · scale` in the Euclidean norm
/// for floats.
pub(crate) fn close<T: CheckNum>(x: &[T], y: &[T], scale: f64, tol: f64) -> bool {
    if !T::FLOAT {
        return x == y;
    }
    let diff = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a.approx() - b.approx()).powi(2))
        .sum::<f64>()
        .sqrt();
    diff <= tol * scale
}

pub(crate) fn close_matrix<T: CheckNum>(x: &Matrix<T>, y: &Matrix<T>, scale: f64, tol: f64) -> bool {
    x.shape() == y.shape() && close(x.entries(), y.entries(), scale, tol)
}

pub(crate) fn negligible<T: CheckNum>(x: &T, scale: f64, tol: f64) -> bool {
    if T::FLOAT {
        x.approx().abs() <= tol * scale
    } else {
        x.is_zero_elem()
    }
}

pub(crate) fn is_identity<T: CheckNum>(m: &Matrix<T>, tol: f64) -> bool {
    let n = m.row_count();
    let id = Matrix::<T>::identity(n);
    close_matrix(m, &id, (n as f64).sqrt().max(1.0), tol)
}

pub(crate) fn order<T: CheckNum>(x: &T, y: &T, scale: f64, tol: f64) -> Ordering {
    if T::FLOAT {
        if (x.approx() - y.approx()).abs() <= tol * scale {
            Ordering::Equal
        } else {
            x.approx().total_cmp(&y.approx())
        }
    } else {
        compare(&x.to_scalar(), &y.to_scalar()).unwrap_or_else(|_| x.approx().total_cmp(&y.approx()))
    }
}

/// Matrix product that also handles a zero inner dimension.
pub(crate) fn product<T: CheckNum>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.col_count() == 0 && b.row_count() == 0 {
        return Ok(Matrix::zeros(a.row_count(), b.col_count()));
    }
    a.matmul(b)
}

pub(crate) fn mat_vec<T: CheckNum>(m: &Matrix<T>, v: &[T]) -> Result<Vec<T>> {
    (0..m.row_count()).map(|i| dot(m.row(i), v)).collect()
}

/// Whether `w` is a scalar multiple of `v`, which must be nonzero.
pub(crate) fn collinear<T: CheckNum>(w: &[T], v: &[T], scale: f64, tol: f64) -> bool {
    if T::FLOAT {
        let vv: f64 = v.iter().map(|x| x.approx().powi(2)).sum();
        if vv == 0.0 {
            return false;
        }
        let k = v.iter().zip(w).map(|(a, b)| a.approx() * b.approx()).sum::<f64>() / vv;
        let residual = w
            .iter()
            .zip(v)
            .map(|(b, a)| (b.approx() - k * a.approx()).powi(2))
            .sum::<f64>()
            .sqrt();
        return residual <= tol * scale;
    }
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if w[i].clone() * v[j].clone() != w[j].clone() * v[i].clone() {
                return false;
            }
        }
    }
    true
}

/// Sorted-multiset agreement of two float lists, relative to the largest
/// magnitude present.
pub(crate) fn multiset_close(claimed: &[f64], expected: &[f64], tol: f64) -> bool {
    if claimed.len() != expected.len() {
        return false;
    }
    let mut c = claimed.to_vec();
    let mut e = expected.to_vec();
    c.sort_by(|a, b| b.total_cmp(a));
    e.sort_by(|a, b| b.total_cmp(a));
    let scale = c
        .iter()
        .chain(&e)
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    c.iter().zip(&e).all(|(a, b)| (a - b).abs() <= tol * scale)
}

/// Exact multiset equality by greedy matching.
pub(crate) fn multiset_equal<T: PartialEq>(claimed: &[T], expected: &[T]) -> bool {
    if claimed.len() != expected.len() {
        return false;
    }
    let mut used = vec![false; expected.len()];
    claimed
        .iter()
        .all(|c| match (0..expected.len()).find(|&i| !used[i] && &expected[i] == c) {
            Some(i) => {
                used[i] = true;
                true
            }
            None => false,
        })
}
