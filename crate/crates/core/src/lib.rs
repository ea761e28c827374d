//! Exact matrix factorizations over the rationals and square-root
//! extensions, derivation traces, and a checker for claimed factorizations.

pub mod diagnose;
pub mod error;
pub mod factorize;
pub mod io;
pub mod json;
pub mod matrix;
pub mod numeric;
pub mod scalar;
pub mod spectrum;
pub mod trace;

pub use diagnose::{check, CheckOptions, Claim, Diagnosis, MistakeCode, Verdict};
pub use error::{Error, Result};
pub use factorize::{diagonalize, orthogonal_diagonalize, pseudoinverse, svd, SvdMode};
pub use matrix::{ExactMatrix, Matrix};
pub use scalar::{RadicalSum, Rational, Scalar};
pub use trace::{explain, ComputeMode, Operation, Trace};
