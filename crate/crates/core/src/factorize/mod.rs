//! Diagonalization, orthogonal diagonalization with Gram-Schmidt, full and
//! reduced SVD with orthonormal completion, and the pseudoinverse.

mod diag;
mod orth;
mod svd;

pub use diag::{diagonalize, orthogonal_diagonalize, Diagonalization, EigenspaceFrame, OrthogonalDiagonalization};
pub use orth::{
    complete_orthonormal, gram_schmidt, gram_schmidt_steps, normalize_columns, normalize_vector, rational_direction,
    to_radical_matrix, Projection,
};
pub use svd::{pseudoinverse, svd, Pseudoinverse, Svd, SvdMode};
