use thiserror::Error;

use crate::spectrum::Spectrum;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("radicand {radicand} has a cofactor too large to factor by trial division")]
    RadicandTooLarge { radicand: String },

    #[error("negative discriminant {discriminant}: complex roots are not supported")]
    ComplexRootsUnsupported { discriminant: String },

    #[error("values from different scalar fields cannot be compared")]
    IncomparableFields,

    #[error("value {0} is outside the range of a 64-bit float")]
    Overflow(String),

    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("scalar field mismatch: {0}")]
    FieldMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("spectrum cannot be resolved exactly: {0}")]
    UnsupportedSpectrum(String),

    #[error("matrix is not diagonalizable: eigenvalue {eigenvalue} has algebraic multiplicity {algebraic} but geometric multiplicity {geometric}")]
    NotDiagonalizable {
        eigenvalue: String,
        algebraic: usize,
        geometric: usize,
    },

    #[error("input vectors are linearly dependent (vector {index} projects to zero)")]
    DependentInput { index: usize },

    #[error("column {index} is zero and cannot be normalized")]
    ZeroColumn { index: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("symmetric matrix has irrational eigenvalues {spectrum}")]
    IrrationalSpectrum { spectrum: Box<Spectrum> },

    #[error("Gram matrix has irrational eigenvalues {spectrum}")]
    IrrationalGramSpectrum { spectrum: Box<Spectrum> },

    #[error("computation leaves the supported scalar fields: {0}")]
    FieldEscape(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("malformed entry {entry:?} at row {row}, column {col}")]
    MalformedEntry { row: usize, col: usize, entry: String },

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },

    #[error("matrix has no entries")]
    EmptyMatrix,

    #[error("claim mixes scalar fields: {0}")]
    FieldMixing(String),

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("invalid document: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn dims(op: &'static str, detail: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            op,
            detail: detail.into(),
        }
    }
}
