//! Verification of claimed factorizations, with failures classified into
//! the usual mistakes: skipped normalization, skipped Gram-Schmidt, singular
//! values taken from the wrong matrix, missing completion columns and so on.

mod arith;
mod checks;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::factorize::SvdMode;
use crate::matrix::ExactMatrix;
use crate::trace::Payload;

pub use checks::{check, check_diagonalization, check_orthogonal_diagonalization, check_svd};

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalizationClaim {
    pub a: ExactMatrix,
    pub p: ExactMatrix,
    pub d: ExactMatrix,
    pub p_inv: Option<ExactMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalDiagonalizationClaim {
    pub a: ExactMatrix,
    pub p: ExactMatrix,
    pub d: ExactMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvdClaim {
    pub m: ExactMatrix,
    pub u: ExactMatrix,
    pub sigma: ExactMatrix,
    pub v: ExactMatrix,
    pub mode: SvdMode,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Claim {
    Diagonalization(DiagonalizationClaim),
    OrthogonalDiagonalization(OrthogonalDiagonalizationClaim),
    Svd(SvdClaim),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Relative tolerance for claims given in floating point.
    pub tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { tol: 1e-6 }
    }
}

impl CheckOptions {
    pub fn validate(&self) -> Result<()> {
        if self.tol > 0.0 && self.tol.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidOption(format!(
                "tolerance must be positive, got {}",
                self.tol
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MistakeCode {
    ReconstructionMismatch,
    NotEigenpair,
    NotDiagonal,
    UnnormalizedColumns,
    NonOrthogonalEigenspace,
    TransposeIsNotInverse,
    WrongGramMatrix,
    SigmaMismatch,
    ReducedAsFull,
    MissingCompletion,
    SigmaNotDescending,
    SigmaNegative,
    SigmaShapeMismatch,
    NotSymmetricInput,
}

impl MistakeCode {
    pub const ALL: [MistakeCode; 14] = [
        MistakeCode::ReconstructionMismatch,
        MistakeCode::NotEigenpair,
        MistakeCode::NotDiagonal,
        MistakeCode::UnnormalizedColumns,
        MistakeCode::NonOrthogonalEigenspace,
        MistakeCode::TransposeIsNotInverse,
        MistakeCode::WrongGramMatrix,
        MistakeCode::SigmaMismatch,
        MistakeCode::ReducedAsFull,
        MistakeCode::MissingCompletion,
        MistakeCode::SigmaNotDescending,
        MistakeCode::SigmaNegative,
        MistakeCode::SigmaShapeMismatch,
        MistakeCode::NotSymmetricInput,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MistakeCode::ReconstructionMismatch => "RECONSTRUCTION_MISMATCH",
            MistakeCode::NotEigenpair => "NOT_EIGENPAIR",
            MistakeCode::NotDiagonal => "NOT_DIAGONAL",
            MistakeCode::UnnormalizedColumns => "UNNORMALIZED_COLUMNS",
            MistakeCode::NonOrthogonalEigenspace => "NON_ORTHOGONAL_EIGENSPACE",
            MistakeCode::TransposeIsNotInverse => "TRANSPOSE_IS_NOT_INVERSE",
            MistakeCode::WrongGramMatrix => "WRONG_GRAM_MATRIX",
            MistakeCode::SigmaMismatch => "SIGMA_MISMATCH",
            MistakeCode::ReducedAsFull => "REDUCED_AS_FULL",
            MistakeCode::MissingCompletion => "MISSING_COMPLETION",
            MistakeCode::SigmaNotDescending => "SIGMA_NOT_DESCENDING",
            MistakeCode::SigmaNegative => "SIGMA_NEGATIVE",
            MistakeCode::SigmaShapeMismatch => "SIGMA_SHAPE_MISMATCH",
            MistakeCode::NotSymmetricInput => "NOT_SYMMETRIC_INPUT",
        }
    }

    pub fn parse(s: &str) -> Option<MistakeCode> {
        MistakeCode::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for MistakeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a finding applies. Columns are numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locus {
    pub component: String,
    pub columns: Vec<usize>,
}

impl Locus {
    pub fn component(name: &str) -> Self {
        Locus {
            component: name.to_string(),
            columns: Vec::new(),
        }
    }

    pub fn columns(name: &str, columns: Vec<usize>) -> Self {
        Locus {
            component: name.to_string(),
            columns,
        }
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.component)?;
        if !self.columns.is_empty() {
            let cols: Vec<String> = self.columns.iter().map(ToString::to_string).collect();
            write!(f, " columns {}", cols.join(", "))?;
        }
        Ok(())
    }
}

/// A checked fact supporting a finding, such as an inner product value.
#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub fact: String,
    pub value: Payload,
}

impl Evidence {
    pub fn new(fact: impl Into<String>, value: Payload) -> Self {
        Evidence {
            fact: fact.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub code: MistakeCode,
    pub locus: Locus,
    pub evidence: Vec<Evidence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnosis {
    pub verdict: Verdict,
    pub findings: Vec<Finding>,
    /// Relative residuals, present for floating-point claims.
    pub residuals: Option<BTreeMap<String, f64>>,
}

impl Diagnosis {
    pub fn from_findings(findings: Vec<Finding>, residuals: Option<BTreeMap<String, f64>>) -> Self {
        Diagnosis {
            verdict: if findings.is_empty() {
                Verdict::Valid
            } else {
                Verdict::Invalid
            },
            findings,
            residuals,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }

    pub fn codes(&self) -> Vec<MistakeCode> {
        self.findings.iter().map(|f| f.code).collect()
    }

    pub fn has(&self, code: MistakeCode) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }

    pub fn finding(&self, code: MistakeCode) -> Option<&Finding> {
        self.findings.iter().find(|f| f.code == code)
    }
}
