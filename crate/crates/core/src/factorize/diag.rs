use crate::error::{Error, Result};
use crate::matrix::{dot, inverse, Matrix};
use crate::scalar::{RadicalSum, Rational};
use crate::spectrum::{eigensystem, EigenBasis, Eigensystem, Eigenvalue};

use super::orth::{gram_schmidt_steps, normalize_columns, Projection};

/// `A = P·D·P⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization {
    pub p: Matrix<Rational>,
    pub d: Matrix<Rational>,
    pub p_inv: Matrix<Rational>,
    pub eigensystem: Eigensystem,
}

fn require_square(a: &Matrix<Rational>, op: &'static str) -> Result<()> {
    if a.is_square() && a.row_count() > 0 {
        Ok(())
    } else {
        Err(Error::dims(
            op,
            format!("{}x{} is not a nonempty square matrix", a.row_count(), a.col_count()),
        ))
    }
}

/// Rational eigenpairs of a rational eigensystem, in spectrum order.
fn rational_eigenpairs(es: &Eigensystem) -> Result<Vec<(Rational, Vec<Vec<Rational>>)>> {
    es.entries
        .iter()
        .map(|e| match (&e.eigenvalue, &e.basis) {
            (Eigenvalue::Rational(l), EigenBasis::Rational(b)) => Ok((l.clone(), b.clone())),
            _ => Err(Error::UnsupportedSpectrum(format!(
                "eigenvalue {} is irrational; P would need entries in Q(sqrt({}))",
                e.eigenvalue,
                match &e.eigenvalue {
                    Eigenvalue::Quadratic(q) => q.radicand().to_string(),
                    Eigenvalue::Rational(_) => String::new(),
                }
            ))),
        })
        .collect()
}

pub fn diagonalize(a: &Matrix<Rational>) -> Result<Diagonalization> {
    require_square(a, "diagonalize")?;
    let es = eigensystem(a)?;
    if let Some(defect) = es.first_defect() {
        return Err(Error::NotDiagonalizable {
            eigenvalue: defect.eigenvalue.to_string(),
            algebraic: defect.algebraic_multiplicity,
            geometric: defect.geometric_multiplicity(),
        });
    }
    let pairs = rational_eigenpairs(&es)?;
    let n = a.row_count();
    let mut columns = Vec::with_capacity(n);
    let mut diagonal = Vec::with_capacity(n);
    for (l, basis) in pairs {
        for v in basis {
            columns.push(v);
            diagonal.push(l.clone());
        }
    }
    let p = Matrix::from_columns(n, &columns)?;
    let p_inv = inverse(&p)?;
    Ok(Diagonalization {
        p,
        d: Matrix::diagonal_matrix(&diagonal, n, n),
        p_inv,
        eigensystem: es,
    })
}

/// One eigenspace of a symmetric matrix: its nullspace basis and the
/// Gram-Schmidt projections that made it orthogonal.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenspaceFrame {
    pub eigenvalue: Rational,
    pub eigenvectors: Vec<Vec<Rational>>,
    pub projections: Vec<Projection>,
}

impl EigenspaceFrame {
    pub fn orthogonal(&self) -> Vec<Vec<Rational>> {
        self.projections.iter().map(|p| p.canonical.clone()).collect()
    }

    /// Gram-Schmidt changed at least one vector beyond rescaling.
    pub fn was_projected(&self) -> bool {
        self.projections.iter().any(|p| p.projected != p.input)
    }
}

/// `A = P·D·Pᵀ` with `PᵀP = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalDiagonalization {
    pub p: Matrix<RadicalSum>,
    pub d: Matrix<Rational>,
    pub eigensystem: Eigensystem,
    pub frames: Vec<EigenspaceFrame>,
}

impl OrthogonalDiagonalization {
    /// Columns of `P` before normalization.
    pub fn directions(&self) -> Vec<Vec<Rational>> {
        self.frames.iter().flat_map(EigenspaceFrame::orthogonal).collect()
    }
}

/// Orthogonal eigenframes of a symmetric rational matrix whose spectrum is
/// rational. Gram-Schmidt runs inside each eigenspace; distinct eigenspaces
/// are orthogonal already.
pub(crate) fn symmetric_frames(es: &Eigensystem) -> Result<Vec<EigenspaceFrame>> {
    let frames = rational_eigenpairs(es)?
        .into_iter()
        .map(|(eigenvalue, eigenvectors)| {
            let projections = gram_schmidt_steps(&eigenvectors)?;
            Ok(EigenspaceFrame {
                eigenvalue,
                eigenvectors,
                projections,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, f) in frames.iter().enumerate() {
        for g in &frames[i + 1..] {
            for x in f.orthogonal() {
                for y in g.orthogonal() {
                    assert!(
                        num_traits::Zero::is_zero(&dot(&x, &y)?),
                        "eigenspaces of a symmetric matrix must be orthogonal"
                    );
                }
            }
        }
    }
    Ok(frames)
}

pub fn orthogonal_diagonalize(s: &Matrix<Rational>) -> Result<OrthogonalDiagonalization> {
    require_square(s, "orthogonal_diagonalize")?;
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let es = eigensystem(s)?;
    if !es.spectrum.is_rational() {
        return Err(Error::IrrationalSpectrum {
            spectrum: Box::new(es.spectrum.clone()),
        });
    }
    let frames = symmetric_frames(&es)?;
    let n = s.row_count();
    let mut diagonal = Vec::with_capacity(n);
    for f in &frames {
        diagonal.extend(std::iter::repeat_n(f.eigenvalue.clone(), f.projections.len()));
    }
    let directions: Vec<Vec<Rational>> = frames.iter().flat_map(EigenspaceFrame::orthogonal).collect();
    Ok(OrthogonalDiagonalization {
        p: normalize_columns(&directions)?,
        d: Matrix::diagonal_matrix(&diagonal, n, n),
        eigensystem: es,
        frames,
    })
}
