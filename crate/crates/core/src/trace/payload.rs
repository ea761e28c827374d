use std::fmt;

use crate::matrix::{ExactMatrix, Matrix};
use crate::scalar::{RadicalSum, Rational, Scalar};
use crate::spectrum::CharPoly;

/// Data attached to a derivation step or a diagnostic finding.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Bool(bool),
    Scalar(Scalar),
    Scalars(Vec<Scalar>),
    /// Column vectors, each listed top to bottom.
    Vectors(Vec<Vec<Scalar>>),
    Matrix(ExactMatrix),
    Polynomial(CharPoly),
    Text(String),
    Record(Vec<(String, Payload)>),
    List(Vec<Payload>),
}

impl Payload {
    pub fn record<S: Into<String>>(fields: impl IntoIterator<Item = (S, Payload)>) -> Payload {
        Payload::Record(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn text(s: impl Into<String>) -> Payload {
        Payload::Text(s.into())
    }

    pub fn count(n: usize) -> Payload {
        Payload::Scalar(Scalar::Rational(Rational::from_integer(n.into())))
    }

    pub fn rational(r: &Rational) -> Payload {
        Payload::Scalar(Scalar::Rational(r.clone()))
    }

    pub fn radical(x: &RadicalSum) -> Payload {
        Payload::Scalar(simplify(x))
    }

    pub fn rationals(v: &[Rational]) -> Payload {
        Payload::Scalars(v.iter().map(|x| Scalar::Rational(x.clone())).collect())
    }

    pub fn rational_vectors(vs: &[Vec<Rational>]) -> Payload {
        Payload::Vectors(
            vs.iter()
                .map(|v| v.iter().map(|x| Scalar::Rational(x.clone())).collect())
                .collect(),
        )
    }

    pub fn radical_vectors(vs: &[Vec<RadicalSum>]) -> Payload {
        Payload::Vectors(vs.iter().map(|v| v.iter().map(simplify).collect()).collect())
    }

    pub fn float_vectors(vs: &[Vec<f64>]) -> Payload {
        Payload::Vectors(
            vs.iter()
                .map(|v| v.iter().map(|&x| Scalar::Float(x)).collect())
                .collect(),
        )
    }

    pub fn rational_matrix(m: &Matrix<Rational>) -> Payload {
        Payload::Matrix(ExactMatrix::Rational(m.clone()))
    }

    /// Radical matrices whose entries are all rational are shown as rational.
    pub fn radical_matrix(m: &Matrix<RadicalSum>) -> Payload {
        Payload::Matrix(ExactMatrix::Radical(m.clone()).simplify())
    }

    pub fn float_matrix(m: &Matrix<f64>) -> Payload {
        Payload::Matrix(ExactMatrix::Float(m.clone()))
    }

    pub fn float(x: f64) -> Payload {
        Payload::Scalar(Scalar::Float(x))
    }

    pub fn field(&self, label: &str) -> Option<&Payload> {
        match self {
            Payload::Record(fields) => fields.iter().find(|(k, _)| k == label).map(|(_, v)| v),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&ExactMatrix> {
        match self {
            Payload::Matrix(m) => Some(m),
            _ => None,
        }
    }
}

/// A radical sum as the narrowest scalar that holds it.
pub fn simplify(x: &RadicalSum) -> Scalar {
    match x.as_rational() {
        Some(r) => Scalar::Rational(r),
        None => Scalar::Radical(x.clone()),
    }
}

impl fmt::Display for Payload {
    /// Compact one-line form used in messages and evidence listings.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Bool(b) => write!(f, "{}", if *b { "true" } else { "false" }),
            Payload::Scalar(s) => s.fmt(f),
            Payload::Scalars(xs) => write!(f, "[{}]", join(xs)),
            Payload::Vectors(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| format!("({})", join(v))).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            Payload::Matrix(m) => {
                let rows: Vec<String> = m.rows().iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "[{}]", rows.join(", "))
            }
            Payload::Polynomial(p) => p.fmt(f),
            Payload::Text(t) => f.write_str(t),
            Payload::Record(fields) => {
                let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                f.write_str(&parts.join("; "))
            }
            Payload::List(items) => {
                let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", parts.join("; "))
            }
        }
    }
}

fn join(xs: &[Scalar]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
