use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::scalar::{sqrt_rational, RadicalSum, RadicalTerm, Rational};
use crate::spectrum::{eigensystem, Eigensystem};

use super::diag::{symmetric_frames, EigenspaceFrame};
use super::orth::{complete_orthonormal, normalize_vector, to_radical_matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SvdMode {
    Full,
    Reduced,
}

impl fmt::Display for SvdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SvdMode::Full => "full",
            SvdMode::Reduced => "reduced",
        })
    }
}

/// `M = U·Σ·Vᵀ`. In reduced mode `U` is m×r, `Σ` is r×r and `V` is n×r.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    pub mode: SvdMode,
    pub u: Matrix<RadicalSum>,
    pub sigma: Matrix<RadicalSum>,
    pub v: Matrix<RadicalSum>,
    pub rank: usize,
    /// The positive singular values, descending.
    pub singular_values: Vec<RadicalTerm>,
    pub gram: Matrix<Rational>,
    pub gram_eigensystem: Eigensystem,
    pub frames: Vec<EigenspaceFrame>,
    /// Columns of `U` added by orthonormal completion (full mode only).
    pub completion: Vec<Vec<RadicalSum>>,
}

impl Svd {
    /// All min(m, n) diagonal entries of the full `Σ`, zeros included.
    pub fn sigma_diagonal(&self) -> Vec<RadicalSum> {
        self.sigma.diagonal()
    }
}

fn gram_analysis(m: &Matrix<Rational>) -> Result<(Matrix<Rational>, Eigensystem, Vec<EigenspaceFrame>)> {
    if m.row_count() == 0 || m.col_count() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let gram = m.transpose().matmul(m)?;
    let es = eigensystem(&gram)?;
    if !es.spectrum.is_rational() {
        return Err(Error::IrrationalGramSpectrum {
            spectrum: Box::new(es.spectrum.clone()),
        });
    }
    let frames = symmetric_frames(&es)?;
    for f in &frames {
        assert!(!f.eigenvalue.is_negative(), "Gram matrix eigenvalues are nonnegative");
    }
    Ok((gram, es, frames))
}

/// Exact SVD through the eigensystem of `MᵀM`.
pub fn svd(m: &Matrix<Rational>, mode: SvdMode) -> Result<Svd> {
    let (gram, es, frames) = gram_analysis(m)?;
    let (rows, cols) = m.shape();

    let mut v_columns: Vec<Vec<RadicalSum>> = Vec::with_capacity(cols);
    let mut singular_values = Vec::new();
    for f in &frames {
        for direction in f.orthogonal() {
            v_columns.push(normalize_vector(&direction)?);
            if !f.eigenvalue.is_zero() {
                singular_values.push(sqrt_rational(&f.eigenvalue)?);
            }
        }
    }
    let rank = singular_values.len();

    let mr = to_radical_matrix(m);
    let mut u_columns: Vec<Vec<RadicalSum>> = Vec::with_capacity(rows);
    for (sigma, v) in singular_values.iter().zip(&v_columns) {
        let inv = RadicalSum::from_term(sigma.clone())
            .inv_term()
            .expect("positive singular value");
        let column = (0..rows)
            .map(|i| Ok(dot(mr.row(i), v)? * inv.clone()))
            .collect::<Result<Vec<_>>>()?;
        u_columns.push(column);
    }

    let sigma_entries: Vec<RadicalSum> = singular_values.iter().cloned().map(RadicalSum::from_term).collect();

    match mode {
        SvdMode::Full => {
            let completion = complete_orthonormal(&u_columns, rows)?;
            u_columns.extend(completion.iter().cloned());
            Ok(Svd {
                mode,
                u: Matrix::from_columns(rows, &u_columns)?,
                sigma: Matrix::diagonal_matrix(&sigma_entries, rows, cols),
                v: Matrix::from_columns(cols, &v_columns)?,
                rank,
                singular_values,
                gram,
                gram_eigensystem: es,
                frames,
                completion,
            })
        }
        SvdMode::Reduced => {
            v_columns.truncate(rank);
            Ok(Svd {
                mode,
                u: Matrix::from_columns(rows, &u_columns)?,
                sigma: Matrix::diagonal_matrix(&sigma_entries, rank, rank),
                v: Matrix::from_columns(cols, &v_columns)?,
                rank,
                singular_values,
                gram,
                gram_eigensystem: es,
                frames,
                completion: Vec::new(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pseudoinverse {
    pub pinv: Matrix<Rational>,
    pub svd: Svd,
}

/// `M⁺ = V·D⁻¹·Uᵀ` from the reduced SVD. The radicals cancel.
pub fn pseudoinverse(m: &Matrix<Rational>) -> Result<Pseudoinverse> {
    let reduced = svd(m, SvdMode::Reduced)?;
    let (rows, cols) = m.shape();
    if reduced.rank == 0 {
        return Ok(Pseudoinverse {
            pinv: Matrix::zeros(cols, rows),
            svd: reduced,
        });
    }
    let inverses: Vec<RadicalSum> = reduced
        .singular_values
        .iter()
        .map(|s| {
            RadicalSum::from_term(s.clone())
                .inv_term()
                .expect("positive singular value")
        })
        .collect();
    let d_inv = Matrix::diagonal_matrix(&inverses, reduced.rank, reduced.rank);
    let product = reduced.v.matmul(&d_inv)?.matmul(&reduced.u.transpose())?;
    let pinv = product.try_map(|x| {
        x.as_rational()
            .ok_or_else(|| Error::FieldEscape(format!("pseudoinverse entry {x} is not rational")))
    })?;
    Ok(Pseudoinverse { pinv, svd: reduced })
}
