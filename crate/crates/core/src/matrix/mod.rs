//! Dense matrices over the exact fields, row reduction, inverses,
//! nullspaces, determinants and vector products.

mod dense;
mod det;
mod reduce;
mod vector;

use std::fmt;

use num_bigint::BigUint;

pub use dense::Matrix;
pub use det::{bareiss_determinant, cofactor_determinant, float_determinant};
pub use reduce::{
    inverse, nullspace_basis, primitive_integer_vector, rank, raw_nullspace, replay, rref, CanonicalDirection, RowOp,
    RrefResult,
};
pub use vector::{cross, dot, norm_squared};
pub use vector::{is_zero as vector_is_zero, scale as scale_vector, sub as sub_vector};

use crate::error::{Error, Result};
use crate::scalar::{QuadRational, RadicalSum, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldTag {
    Rational,
    RadicalSum,
    QuadRational(BigUint),
    Float64,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => f.write_str("rational"),
            FieldTag::RadicalSum => f.write_str("radical"),
            FieldTag::QuadRational(d) => write!(f, "quadratic({d})"),
            FieldTag::Float64 => f.write_str("float64"),
        }
    }
}

/// A matrix tagged with the one scalar field its entries live in.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactMatrix {
    Rational(Matrix<Rational>),
    Radical(Matrix<RadicalSum>),
    Quadratic(Matrix<QuadRational>),
    Float(Matrix<f64>),
}

impl ExactMatrix {
    pub fn field_tag(&self) -> FieldTag {
        match self {
            ExactMatrix::Rational(_) => FieldTag::Rational,
            ExactMatrix::Radical(_) => FieldTag::RadicalSum,
            ExactMatrix::Quadratic(m) => FieldTag::QuadRational(quad_radicand(m).unwrap_or_default()),
            ExactMatrix::Float(_) => FieldTag::Float64,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            ExactMatrix::Rational(m) => m.shape(),
            ExactMatrix::Radical(m) => m.shape(),
            ExactMatrix::Quadratic(m) => m.shape(),
            ExactMatrix::Float(m) => m.shape(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self {
            ExactMatrix::Rational(m) => Scalar::Rational(m.get(i, j).clone()),
            ExactMatrix::Radical(m) => Scalar::Radical(m.get(i, j).clone()),
            ExactMatrix::Quadratic(m) => Scalar::Quadratic(m.get(i, j).clone()),
            ExactMatrix::Float(m) => Scalar::Float(*m.get(i, j)),
        }
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        let (r, c) = self.shape();
        (0..r).map(|i| (0..c).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        match self {
            ExactMatrix::Rational(m) => ExactMatrix::Rational(m.transpose()),
            ExactMatrix::Radical(m) => ExactMatrix::Radical(m.transpose()),
            ExactMatrix::Quadratic(m) => ExactMatrix::Quadratic(m.transpose()),
            ExactMatrix::Float(m) => ExactMatrix::Float(m.transpose()),
        }
    }

    /// The matrix as radical sums, when its field embeds there.
    pub fn to_radical(&self) -> Option<Matrix<RadicalSum>> {
        match self {
            ExactMatrix::Rational(m) => Some(m.map(|x| RadicalSum::from_rational(x.clone()))),
            ExactMatrix::Radical(m) => Some(m.clone()),
            _ => None,
        }
    }

    pub fn to_float(&self) -> Result<Matrix<f64>> {
        match self {
            ExactMatrix::Float(m) => Ok(m.clone()),
            ExactMatrix::Rational(m) => m.try_map(crate::scalar::rational_to_f64),
            ExactMatrix::Radical(m) => m.try_map(RadicalSum::to_f64),
            ExactMatrix::Quadratic(m) => m.try_map(QuadRational::to_f64),
        }
    }

    /// Narrows radical or quadratic entries back to rationals when possible.
    pub fn simplify(self) -> ExactMatrix {
        match &self {
            ExactMatrix::Radical(m) => {
                if m.entries().iter().all(|x| x.as_rational().is_some()) {
                    return ExactMatrix::Rational(m.map(|x| x.as_rational().expect("checked")));
                }
            }
            ExactMatrix::Quadratic(m) if m.entries().iter().all(|x| x.as_rational().is_some()) => {
                return ExactMatrix::Rational(m.map(|x| x.as_rational().expect("checked").clone()));
            }
            _ => {}
        }
        self
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactMatrix::Rational(m) => m.fmt(f),
            ExactMatrix::Radical(m) => m.fmt(f),
            ExactMatrix::Quadratic(m) => m.fmt(f),
            ExactMatrix::Float(m) => m.fmt(f),
        }
    }
}

fn promote_quad(m: &Matrix<Rational>, d: &BigUint) -> Matrix<QuadRational> {
    m.map(|x| QuadRational::from_rational(x.clone(), d))
}

fn quad_radicand(m: &Matrix<QuadRational>) -> Option<BigUint> {
    m.entries()
        .iter()
        .find(|x| x.as_rational().is_none())
        .or(m.entries().first())
        .map(|x| x.radicand().clone())
}

/// Exact product. Rationals promote into the other operand's field; the
/// result lives in the join of the two fields.
pub fn matmul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    use ExactMatrix::*;
    Ok(match (a, b) {
        (Rational(x), Rational(y)) => Rational(x.matmul(y)?),
        (Radical(x), Radical(y)) => Radical(x.matmul(y)?),
        (Rational(_), Radical(y)) => Radical(a.to_radical().expect("rational").matmul(y)?),
        (Radical(x), Rational(_)) => Radical(x.matmul(&b.to_radical().expect("rational"))?),
        (Quadratic(x), Quadratic(y)) => {
            if let (Some(dx), Some(dy)) = (quad_radicand(x), quad_radicand(y)) {
                let mixed = x.entries().iter().any(|e| e.as_rational().is_none())
                    && y.entries().iter().any(|e| e.as_rational().is_none());
                if mixed && dx != dy {
                    return Err(Error::FieldMismatch(format!(
                        "quadratic extensions sqrt({dx}) and sqrt({dy})"
                    )));
                }
            }
            Quadratic(x.matmul(y)?)
        }
        (Rational(x), Quadratic(y)) => {
            let d = quad_radicand(y).unwrap_or_default();
            Quadratic(promote_quad(x, &d).matmul(y)?)
        }
        (Quadratic(x), Rational(y)) => {
            let d = quad_radicand(x).unwrap_or_default();
            Quadratic(x.matmul(&promote_quad(y, &d))?)
        }
        (Float(x), Float(y)) => Float(x.matmul(y)?),
        _ => {
            return Err(Error::FieldMismatch(format!(
                "cannot multiply {} by {}",
                a.field_tag(),
                b.field_tag()
            )))
        }
    })
}

/// Exact determinant: fraction-free elimination over the rationals and
/// cofactor expansion over the radical and quadratic fields.
pub fn determinant(m: &ExactMatrix) -> Result<Scalar> {
    Ok(match m {
        ExactMatrix::Rational(x) => Scalar::Rational(bareiss_determinant(x)?),
        ExactMatrix::Radical(x) => Scalar::Radical(cofactor_determinant(x)?),
        ExactMatrix::Quadratic(x) => Scalar::Quadratic(cofactor_determinant(x)?),
        ExactMatrix::Float(x) => Scalar::Float(float_determinant(x)?),
    })
}
