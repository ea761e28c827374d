use std::fmt;

use crate::error::{Error, Result};
use crate::factorize::{diagonalize, orthogonal_diagonalize, pseudoinverse, svd, SvdMode};
use crate::matrix::Matrix;
use crate::numeric::{
    jacobi_symmetric_eig, numeric_orthogonal_diagonalize, numeric_svd, orthogonality_residual, relative_residual,
    to_float_matrix, NumericOptions,
};
use crate::scalar::{sqrt_rational, RadicalSum, Rational};
use crate::spectrum::{characteristic_polynomial, eigensystem, resolve_spectrum, Eigenvalue};

use super::build::{
    input, trace_diagonalization, trace_eigensystem, trace_orthogonal_diagonalization, trace_pseudoinverse, trace_svd,
};
use super::{Payload, StepKind, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComputeMode {
    Exact,
    Numeric,
    /// Exact, switching to floats when the spectrum leaves the supported
    /// exact fields.
    Auto,
}

impl fmt::Display for ComputeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComputeMode::Exact => "exact",
            ComputeMode::Numeric => "numeric",
            ComputeMode::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operation {
    Eigen,
    Diag,
    OrthDiag,
    Svd(SvdMode),
    Pinv,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::Eigen => "eigen",
            Operation::Diag => "diag",
            Operation::OrthDiag => "orthdiag",
            Operation::Svd(SvdMode::Full) => "svd-full",
            Operation::Svd(SvdMode::Reduced) => "svd-reduced",
            Operation::Pinv => "pinv",
        }
    }

    pub fn parse(s: &str) -> Option<Operation> {
        [
            Operation::Eigen,
            Operation::Diag,
            Operation::OrthDiag,
            Operation::Svd(SvdMode::Full),
            Operation::Svd(SvdMode::Reduced),
            Operation::Pinv,
        ]
        .into_iter()
        .find(|op| op.name() == s)
    }

    fn needs_symmetric(self) -> bool {
        matches!(self, Operation::Eigen | Operation::Diag | Operation::OrthDiag)
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Suffix marking traces computed in floating point.
pub const NUMERIC_SUFFIX: &str = "/numeric";

fn exact(op: Operation, a: &Matrix<Rational>) -> Result<Trace> {
    Ok(match op {
        Operation::Eigen => trace_eigensystem(a, &eigensystem(a)?),
        Operation::Diag => trace_diagonalization(a, &diagonalize(a)?),
        Operation::OrthDiag => trace_orthogonal_diagonalization(a, &orthogonal_diagonalize(a)?),
        Operation::Svd(mode) => trace_svd(a, &svd(a, mode)?),
        Operation::Pinv => trace_pseudoinverse(a, &pseudoinverse(a)?),
    })
}

fn falls_back(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedSpectrum(_) | Error::IrrationalSpectrum { .. } | Error::IrrationalGramSpectrum { .. }
    )
}

/// Runs `op` on `a` and records the derivation.
pub fn explain(op: Operation, a: &Matrix<Rational>, mode: ComputeMode) -> Result<Trace> {
    if a.row_count() == 0 || a.col_count() == 0 {
        return Err(Error::EmptyMatrix);
    }
    match mode {
        ComputeMode::Exact => exact(op, a),
        ComputeMode::Numeric => numeric(op, a, None),
        ComputeMode::Auto => match exact(op, a) {
            Err(e) if falls_back(&e) && (!op.needs_symmetric() || a.is_symmetric()) => numeric(op, a, Some(&e)),
            other => other,
        },
    }
}

/// Whatever the exact pipeline can still say before floats take over.
fn exact_prefix(t: &mut Trace, op: Operation, a: &Matrix<Rational>) -> Result<()> {
    let (name, target) = match op {
        Operation::Svd(_) | Operation::Pinv => ("M^T*M", a.transpose().matmul(a)?),
        _ => ("A", a.clone()),
    };
    let p = characteristic_polynomial(&target)?;
    let mut fields = vec![("p(x)".to_string(), Payload::Polynomial(p.clone()))];
    if name != "A" {
        fields.insert(0, (name.to_string(), Payload::rational_matrix(&target)));
    }
    t.push(
        StepKind::CharPoly,
        format!("characteristic polynomial of {name}"),
        Payload::Record(fields),
    );
    let Ok(spectrum) = resolve_spectrum(&p) else {
        return Ok(());
    };
    let eigenvalues = spectrum.eigenvalues();
    t.push(
        StepKind::Eigenvalues,
        "roots of p(x), repeated by multiplicity",
        Payload::record([(
            format!("Eigenvalues of {name}"),
            Payload::Scalars(eigenvalues.iter().map(Eigenvalue::to_scalar).collect()),
        )]),
    );
    if name != "A" {
        // Square roots of surds are outside the exact fields; they are
        // reported symbolically.
        let mut fields = Vec::new();
        for l in eigenvalues
            .iter()
            .filter(|l| l.as_rational().is_none_or(|r| *r != Rational::from_integer(0.into())))
        {
            let value = match l {
                Eigenvalue::Rational(r) => Payload::radical(&RadicalSum::from_term(sqrt_rational(r)?)),
                Eigenvalue::Quadratic(q) => {
                    let inner = q.to_string();
                    let inner = inner
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .unwrap_or(&inner)
                        .to_string();
                    Payload::text(format!("sqrt({inner})"))
                }
            };
            fields.push((format!("sigma{}", fields.len() + 1), value));
        }
        t.push(
            StepKind::SingularValues,
            "exact singular values, symbolically",
            Payload::Record(fields),
        );
    }
    Ok(())
}

fn residual_record(fields: Vec<(&str, f64)>, opts: &NumericOptions) -> Payload {
    let within = fields.iter().all(|(_, r)| *r <= opts.verify_rel_tol);
    Payload::record(
        fields
            .into_iter()
            .map(|(k, v)| (k.to_string(), Payload::float(v)))
            .chain([("within tolerance".to_string(), Payload::Bool(within))]),
    )
}

fn numeric(op: Operation, a: &Matrix<Rational>, reason: Option<&Error>) -> Result<Trace> {
    let opts = NumericOptions::default();
    let mut t = Trace::new(format!("{}{NUMERIC_SUFFIX}", op.name()));
    let name = match op {
        Operation::Svd(_) | Operation::Pinv => "M",
        _ => "A",
    };
    input(&mut t, name, a);
    if let Some(e) = reason {
        exact_prefix(&mut t, op, a)?;
        t.push(
            StepKind::Fallback,
            "the exact pipeline stopped; continuing in double precision",
            Payload::record([("reason", Payload::text(e.to_string()))]),
        );
    }
    let af = to_float_matrix(a)?;
    match op {
        Operation::Eigen | Operation::Diag | Operation::OrthDiag => {
            if !a.is_symmetric() {
                return Err(match op {
                    Operation::OrthDiag => Error::NotSymmetric,
                    _ => Error::UnsupportedSpectrum(
                        "numeric eigenvalues are computed only for symmetric matrices".into(),
                    ),
                });
            }
            if op == Operation::Eigen {
                let e = jacobi_symmetric_eig(&af, &opts)?;
                t.push(
                    StepKind::Eigenvalues,
                    "Jacobi rotations",
                    Payload::record([(
                        "Eigenvalues of A",
                        Payload::Scalars(e.eigenvalues.iter().map(|&x| crate::scalar::Scalar::Float(x)).collect()),
                    )]),
                );
                t.push(
                    StepKind::Eigenvectors,
                    "columns of the rotation product",
                    Payload::record([("Q", Payload::float_vectors(&e.q.columns()))]),
                );
                let d = Matrix::diagonal_matrix(&e.eigenvalues, a.row_count(), a.row_count());
                let r = relative_residual(&af.matmul(&e.q)?, &e.q.matmul(&d)?)?;
                t.push(
                    StepKind::Verify,
                    "relative residual of A*Q = Q*D",
                    residual_record(vec![("eigen", r)], &opts),
                );
                return Ok(t);
            }
            let f = numeric_orthogonal_diagonalize(&af, &opts)?;
            t.push(
                StepKind::Eigenvalues,
                "Jacobi rotations",
                Payload::record([(
                    "Eigenvalues of A",
                    Payload::Scalars(f.eigenvalues.iter().map(|&x| crate::scalar::Scalar::Float(x)).collect()),
                )]),
            );
            let mut factors = vec![("P", Payload::float_matrix(&f.p)), ("D", Payload::float_matrix(&f.d))];
            if op == Operation::Diag {
                factors.push(("P^-1", Payload::float_matrix(&f.p.transpose())));
            }
            t.push(
                StepKind::AssembleFactor,
                "orthonormal eigenvectors as the columns of P",
                Payload::record(factors),
            );
            let orth = orthogonality_residual(&f.p)?;
            t.push(
                StepKind::Verify,
                "relative residuals",
                residual_record(vec![("reconstruction", f.residual), ("orthogonality_p", orth)], &opts),
            );
        }
        Operation::Svd(mode) => {
            let s = numeric_svd(&af, &opts)?;
            let (u, sigma, v) = match mode {
                SvdMode::Full => (s.u.clone(), s.sigma.clone(), s.v.clone()),
                SvdMode::Reduced => (
                    s.u.column_slice(0..s.rank),
                    Matrix::diagonal_matrix(&s.singular_values[..s.rank], s.rank, s.rank),
                    s.v.column_slice(0..s.rank),
                ),
            };
            t.push(
                StepKind::SingularValues,
                "square roots of the eigenvalues of the Gram matrix",
                sigma_record(&s.singular_values, s.rank),
            );
            t.push(
                StepKind::AssembleFactor,
                match mode {
                    SvdMode::Full => "full SVD factors",
                    SvdMode::Reduced => "reduced SVD factors",
                },
                Payload::record([
                    ("U", Payload::float_matrix(&u)),
                    ("Sigma", Payload::float_matrix(&sigma)),
                    ("V", Payload::float_matrix(&v)),
                ]),
            );
            let rec = if s.rank == 0 && mode == SvdMode::Reduced {
                Matrix::zeros(af.row_count(), af.col_count())
            } else {
                u.matmul(&sigma)?.matmul(&v.transpose())?
            };
            t.push(
                StepKind::Verify,
                "relative residuals",
                residual_record(
                    vec![
                        ("reconstruction", relative_residual(&rec, &af)?),
                        ("orthogonality_u", orthogonality_residual(&u)?),
                        ("orthogonality_v", orthogonality_residual(&v)?),
                    ],
                    &opts,
                ),
            );
        }
        Operation::Pinv => {
            let s = numeric_svd(&af, &opts)?;
            t.push(
                StepKind::SingularValues,
                "square roots of the eigenvalues of the Gram matrix",
                sigma_record(&s.singular_values, s.rank),
            );
            let (rows, cols) = af.shape();
            let inverses: Vec<f64> = s.singular_values[..s.rank].iter().map(|x| 1.0 / x).collect();
            t.push(
                StepKind::Inverse,
                "reciprocals of the positive singular values",
                Payload::record([(
                    "D^-1",
                    Payload::float_matrix(&Matrix::diagonal_matrix(&inverses, s.rank, s.rank)),
                )]),
            );
            let pinv = if s.rank == 0 {
                Matrix::zeros(cols, rows)
            } else {
                s.v.column_slice(0..s.rank)
                    .matmul(&Matrix::diagonal_matrix(&inverses, s.rank, s.rank))?
                    .matmul(&s.u.column_slice(0..s.rank).transpose())?
            };
            t.push(
                StepKind::AssembleFactor,
                "M+ = V*D^-1*U^T from the reduced factors",
                Payload::record([("M+", Payload::float_matrix(&pinv))]),
            );
            let mp = af.matmul(&pinv)?;
            let pm = pinv.matmul(&af)?;
            t.push(
                StepKind::Verify,
                "relative residuals of the four Penrose conditions",
                residual_record(
                    vec![
                        ("M*M+*M", relative_residual(&mp.matmul(&af)?, &af)?),
                        ("M+*M*M+", relative_residual(&pm.matmul(&pinv)?, &pinv)?),
                        ("(M*M+)^T", relative_residual(&mp.transpose(), &mp)?),
                        ("(M+*M)^T", relative_residual(&pm.transpose(), &pm)?),
                    ],
                    &opts,
                ),
            );
        }
    }
    Ok(t)
}

fn sigma_record(values: &[f64], rank: usize) -> Payload {
    Payload::record(
        values
            .iter()
            .enumerate()
            .map(|(i, &x)| (format!("sigma{}", i + 1), Payload::float(x)))
            .chain([("rank".to_string(), Payload::count(rank))]),
    )
}
