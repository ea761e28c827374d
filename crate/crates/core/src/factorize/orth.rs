use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{dot, nullspace_basis, primitive_integer_vector, Matrix};
use crate::scalar::{sqrt_rational, RadicalSum, RadicalTerm, Rational};

/// One Gram-Schmidt projection: `input` minus its components along the
/// earlier outputs gives `projected`, which is reported as `canonical`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub input: Vec<Rational>,
    pub projected: Vec<Rational>,
    pub canonical: Vec<Rational>,
}

/// Sequential projections with every result in primitive integer form.
pub fn gram_schmidt(basis: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    Ok(gram_schmidt_steps(basis)?.into_iter().map(|p| p.canonical).collect())
}

pub fn gram_schmidt_steps(basis: &[Vec<Rational>]) -> Result<Vec<Projection>> {
    let mut done: Vec<Projection> = Vec::with_capacity(basis.len());
    for (index, q) in basis.iter().enumerate() {
        let mut projected = q.clone();
        for prev in &done {
            let w = &prev.canonical;
            let coeff = dot(w, q)? / dot(w, w)?;
            if coeff.is_zero() {
                continue;
            }
            for (x, wi) in projected.iter_mut().zip(w) {
                *x -= &coeff * wi;
            }
        }
        if projected.iter().all(Zero::is_zero) {
            return Err(Error::DependentInput { index });
        }
        let canonical = primitive_integer_vector(&projected);
        done.push(Projection {
            input: q.clone(),
            projected,
            canonical,
        });
    }
    Ok(done)
}

/// `v/‖v‖` with entries `vᵢ·√s/s`, `s = v·v`.
pub fn normalize_vector(v: &[Rational]) -> Result<Vec<RadicalSum>> {
    let s = dot(v, v)?;
    if s.is_zero() {
        return Err(Error::ZeroColumn { index: 0 });
    }
    let inv_norm = sqrt_rational(&s.recip())?;
    Ok(v.iter()
        .map(|x| {
            RadicalSum::from_term(RadicalTerm {
                coeff: x * &inv_norm.coeff,
                radicand: inv_norm.radicand.clone(),
            })
        })
        .collect())
}

/// Normalizes each vector and stacks the results as columns.
pub fn normalize_columns(cols: &[Vec<Rational>]) -> Result<Matrix<RadicalSum>> {
    let rows = cols.first().map_or(0, Vec::len);
    let normalized = cols
        .iter()
        .enumerate()
        .map(|(index, c)| {
            normalize_vector(c).map_err(|e| match e {
                Error::ZeroColumn { .. } => Error::ZeroColumn { index },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(rows, &normalized)
}

/// The rational vector `w` with `v = w·√r` when every entry of `v` is a
/// multiple of one square root.
pub fn rational_direction(v: &[RadicalSum]) -> Option<Vec<Rational>> {
    let mut radicand: Option<BigUint> = None;
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        let term = x.as_term()?;
        if term.is_zero() {
            out.push(Rational::zero());
            continue;
        }
        match &radicand {
            Some(r) if *r != term.radicand => return None,
            Some(_) => {}
            None => radicand = Some(term.radicand.clone()),
        }
        out.push(term.coeff);
    }
    Some(out)
}

/// Extends orthonormal vectors to an orthonormal basis of the whole space:
/// nullspace of the stacked directions, Gram-Schmidt, then normalization.
pub fn complete_orthonormal(partial: &[Vec<RadicalSum>], dim: usize) -> Result<Vec<Vec<RadicalSum>>> {
    if partial.len() >= dim {
        return Ok(Vec::new());
    }
    let missing = if partial.is_empty() {
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect()
    } else {
        let rows = partial
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() != dim {
                    return Err(Error::dims(
                        "complete_orthonormal",
                        format!("vector {i} has length {}, expected {dim}", v.len()),
                    ));
                }
                rational_direction(v).ok_or_else(|| {
                    Error::FieldEscape(format!(
                        "vector {i} mixes square roots; its orthogonal complement is not rational"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        nullspace_basis(&Matrix::from_rows(rows)?)
    };
    gram_schmidt(&missing)?.iter().map(|v| normalize_vector(v)).collect()
}

/// A rational matrix viewed over the radical sums.
pub fn to_radical_matrix(m: &Matrix<Rational>) -> Matrix<RadicalSum> {
    m.map(|x| RadicalSum::from_rational(x.clone()))
}
