//! Characteristic polynomials, exact eigenvalues (rational roots plus at
//! most one quadratic extension) and eigensystems with multiplicities.

mod poly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

pub use poly::{characteristic_polynomial, rational_roots, CharPoly};

use crate::error::{Error, Result};
use crate::matrix::{nullspace_basis, Matrix};
use crate::scalar::{compare, solve_monic_quadratic, QuadRational, QuadraticRoots, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Eigenvalue {
    Rational(Rational),
    Quadratic(QuadRational),
}

impl Eigenvalue {
    pub fn to_scalar(&self) -> Scalar {
        match self {
            Eigenvalue::Rational(r) => Scalar::Rational(r.clone()),
            Eigenvalue::Quadratic(q) => Scalar::Quadratic(q.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Eigenvalue::Rational(r) => Some(r),
            Eigenvalue::Quadratic(q) => q.as_rational(),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        self.to_scalar().to_float()
    }

    fn cmp_exact(&self, other: &Self) -> Ordering {
        compare(&self.to_scalar(), &other.to_scalar()).expect("spectrum shares one extension")
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_scalar().fmt(f)
    }
}

/// Distinct eigenvalues with algebraic multiplicities, descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub entries: Vec<(Eigenvalue, usize)>,
}

impl Spectrum {
    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Every eigenvalue repeated by multiplicity.
    pub fn eigenvalues(&self) -> Vec<Eigenvalue> {
        self.entries
            .iter()
            .flat_map(|(l, m)| std::iter::repeat_n(l.clone(), *m))
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(|(l, _)| l.as_rational().is_some())
    }

    pub fn rational_entries(&self) -> Option<Vec<(Rational, usize)>> {
        self.entries
            .iter()
            .map(|(l, m)| l.as_rational().map(|r| (r.clone(), *m)))
            .collect()
    }

    pub fn to_f64(&self) -> Result<Vec<f64>> {
        self.eigenvalues().iter().map(Eigenvalue::to_f64).collect()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, l) in self.eigenvalues().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            l.fmt(f)?;
        }
        f.write_str("]")
    }
}

/// Rational roots plus the roots of a quadratic remainder.
pub fn resolve_spectrum(p: &CharPoly) -> Result<Spectrum> {
    let (roots, rest) = rational_roots(p);
    let mut entries: Vec<(Eigenvalue, usize)> = roots.into_iter().map(|(r, m)| (Eigenvalue::Rational(r), m)).collect();
    match rest.degree() {
        0 => {}
        2 => {
            let c = rest.coefficients();
            match solve_monic_quadratic(&c[1], &c[0]) {
                Ok(QuadraticRoots::Conjugate(hi, lo)) => {
                    entries.push((Eigenvalue::Quadratic(hi), 1));
                    entries.push((Eigenvalue::Quadratic(lo), 1));
                }
                Ok(QuadraticRoots::Rational(hi, lo)) => {
                    entries.push((Eigenvalue::Rational(hi), 1));
                    entries.push((Eigenvalue::Rational(lo), 1));
                }
                Err(Error::ComplexRootsUnsupported { discriminant }) => {
                    return Err(Error::UnsupportedSpectrum(format!(
                        "factor {rest} has complex roots (discriminant {discriminant})"
                    )))
                }
                Err(e) => return Err(e),
            }
        }
        _ => {
            return Err(Error::UnsupportedSpectrum(format!(
                "factor {rest} of degree {} has no rational roots",
                rest.degree()
            )))
        }
    }
    entries.sort_by(|a, b| b.0.cmp_exact(&a.0));
    Ok(Spectrum { entries })
}

#[derive(Debug, Clone, PartialEq)]
pub enum EigenBasis {
    Rational(Vec<Vec<Rational>>),
    Quadratic(Vec<Vec<QuadRational>>),
}

impl EigenBasis {
    pub fn len(&self) -> usize {
        match self {
            EigenBasis::Rational(v) => v.len(),
            EigenBasis::Quadratic(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rational(&self) -> Option<&[Vec<Rational>]> {
        match self {
            EigenBasis::Rational(v) => Some(v),
            EigenBasis::Quadratic(_) => None,
        }
    }

    pub fn to_scalars(&self) -> Vec<Vec<Scalar>> {
        match self {
            EigenBasis::Rational(v) => v
                .iter()
                .map(|x| x.iter().map(|e| Scalar::Rational(e.clone())).collect())
                .collect(),
            EigenBasis::Quadratic(v) => v
                .iter()
                .map(|x| x.iter().map(|e| Scalar::Quadratic(e.clone())).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenEntry {
    pub eigenvalue: Eigenvalue,
    pub algebraic_multiplicity: usize,
    pub basis: EigenBasis,
}

impl EigenEntry {
    pub fn geometric_multiplicity(&self) -> usize {
        self.basis.len()
    }

    pub fn is_defective(&self) -> bool {
        self.geometric_multiplicity() < self.algebraic_multiplicity
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem {
    pub charpoly: CharPoly,
    pub spectrum: Spectrum,
    pub entries: Vec<EigenEntry>,
}

impl Eigensystem {
    pub fn is_diagonalizable(&self) -> bool {
        self.entries.iter().all(|e| !e.is_defective())
    }

    /// The first eigenvalue whose eigenspace is too small.
    pub fn first_defect(&self) -> Option<&EigenEntry> {
        self.entries.iter().find(|e| e.is_defective())
    }
}

fn shifted(a: &Matrix<Rational>, lambda: &Rational) -> Matrix<Rational> {
    Matrix::from_fn(a.row_count(), a.col_count(), |i, j| {
        if i == j {
            a.get(i, j) - lambda
        } else {
            a.get(i, j).clone()
        }
    })
}

fn shifted_quad(a: &Matrix<Rational>, lambda: &QuadRational, d: &BigUint) -> Matrix<QuadRational> {
    Matrix::from_fn(a.row_count(), a.col_count(), |i, j| {
        let x = QuadRational::from_rational(a.get(i, j).clone(), d);
        if i == j {
            x - lambda.clone()
        } else {
            x
        }
    })
}

/// Eigenspaces as canonical nullspace bases of `A − λI`, in spectrum order.
pub fn eigensystem(a: &Matrix<Rational>) -> Result<Eigensystem> {
    let charpoly = characteristic_polynomial(a)?;
    let spectrum = resolve_spectrum(&charpoly)?;
    let entries = spectrum
        .entries
        .iter()
        .map(|(lambda, mult)| {
            let basis = match lambda {
                Eigenvalue::Rational(r) => EigenBasis::Rational(nullspace_basis(&shifted(a, r))),
                Eigenvalue::Quadratic(q) => EigenBasis::Quadratic(nullspace_basis(&shifted_quad(a, q, q.radicand()))),
            };
            EigenEntry {
                eigenvalue: lambda.clone(),
                algebraic_multiplicity: *mult,
                basis,
            }
        })
        .collect();
    Ok(Eigensystem {
        charpoly,
        spectrum,
        entries,
    })
}
