//! Floating-point fallback: a cyclic Jacobi eigensolver for symmetric
//! matrices and an SVD through the smaller Gram matrix.

mod jacobi;

pub use jacobi::{jacobi_symmetric_eig, SymmetricEigen};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{rational_to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    pub sweep_limit: usize,
    /// Off-diagonal Frobenius mass at which Jacobi stops, relative to ‖S‖_F.
    pub off_diagonal_tol: f64,
    /// Singular values below this fraction of σ₁ count as zero.
    pub zero_sigma_rel_tol: f64,
    pub verify_rel_tol: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            sweep_limit: 30,
            off_diagonal_tol: 1e-12,
            zero_sigma_rel_tol: 1e-10,
            verify_rel_tol: 1e-9,
        }
    }
}

impl NumericOptions {
    pub fn validate(&self) -> Result<()> {
        if self.sweep_limit == 0 {
            return Err(Error::InvalidOption("sweep_limit must be at least 1".into()));
        }
        for (name, x) in [
            ("off_diagonal_tol", self.off_diagonal_tol),
            ("zero_sigma_rel_tol", self.zero_sigma_rel_tol),
            ("verify_rel_tol", self.verify_rel_tol),
        ] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::InvalidOption(format!("{name} must be positive, got {x}")));
            }
        }
        Ok(())
    }
}

pub fn to_float_matrix(m: &Matrix<Rational>) -> Result<Matrix<f64>> {
    m.try_map(rational_to_f64)
}

/// Symmetric factorization `S = Q·Λ·Qᵀ` in floats.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericOrthogonalDiagonalization {
    pub p: Matrix<f64>,
    pub d: Matrix<f64>,
    pub eigenvalues: Vec<f64>,
    pub residual: f64,
}

pub fn numeric_orthogonal_diagonalize(
    s: &Matrix<f64>,
    opts: &NumericOptions,
) -> Result<NumericOrthogonalDiagonalization> {
    let e = jacobi_symmetric_eig(s, opts)?;
    let n = s.row_count();
    let d = Matrix::diagonal_matrix(&e.eigenvalues, n, n);
    let report = numeric_verify(s, &[&e.q, &d, &e.q.transpose()], &[&e.q])?;
    Ok(NumericOrthogonalDiagonalization {
        p: e.q,
        d,
        eigenvalues: e.eigenvalues,
        residual: report.reconstruction,
    })
}

/// Full SVD in floats. `singular_values` has min(m, n) entries, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericSvd {
    pub u: Matrix<f64>,
    pub sigma: Matrix<f64>,
    pub v: Matrix<f64>,
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub residual: f64,
}

fn column_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extends orthonormal columns to a basis of `dim`-space, trying the
/// standard basis vectors in order with two passes of projection.
fn complete_float(mut cols: Vec<Vec<f64>>, dim: usize) -> Vec<Vec<f64>> {
    let mut k = 0;
    while cols.len() < dim && k < dim {
        let mut w: Vec<f64> = (0..dim).map(|i| if i == k { 1.0 } else { 0.0 }).collect();
        for _ in 0..2 {
            for c in &cols {
                let proj = column_dot(c, &w);
                for (x, ci) in w.iter_mut().zip(c) {
                    *x -= proj * ci;
                }
            }
        }
        let norm = column_dot(&w, &w).sqrt();
        if norm > 1e-8 {
            cols.push(w.into_iter().map(|x| x / norm).collect());
        }
        k += 1;
    }
    cols
}

fn gram_schmidt_float(cols: &mut [Vec<f64>]) {
    for i in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(i);
        let w = &mut rest[0];
        for c in done.iter() {
            let proj = column_dot(c, w);
            for (x, ci) in w.iter_mut().zip(c) {
                *x -= proj * ci;
            }
        }
        let norm = column_dot(w, w).sqrt();
        for x in w.iter_mut() {
            *x /= norm;
        }
    }
}

/// SVD through the eigensystem of the smaller Gram matrix, transferring
/// singular vectors with `uᵢ = M·vᵢ/σᵢ` (or `vᵢ = Mᵀ·uᵢ/σᵢ`).
pub fn numeric_svd(m: &Matrix<f64>, opts: &NumericOptions) -> Result<NumericSvd> {
    opts.validate()?;
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyMatrix);
    }
    let wide = cols > rows;
    let (gram, small, large) = if wide {
        (m.matmul(&m.transpose())?, rows, cols)
    } else {
        (m.transpose().matmul(m)?, cols, rows)
    };
    let e = jacobi_symmetric_eig(&gram, opts)?;
    // σᵢ = ‖M·vᵢ‖ keeps absolute accuracy near ε·σ₁, where √λᵢ of the Gram
    // matrix would only reach √ε·σ₁ for vanishing singular values.
    let far_source = if wide { m.transpose() } else { m.clone() };
    let mut pairs: Vec<(f64, Vec<f64>, Vec<f64>)> =
        e.q.columns()
            .into_iter()
            .map(|v| {
                let w: Vec<f64> = (0..large).map(|r| column_dot(far_source.row(r), &v)).collect();
                (column_dot(&w, &w).sqrt(), v, w)
            })
            .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let cutoff = opts.zero_sigma_rel_tol * pairs.first().map_or(0.0, |p| p.0);
    let rank = pairs.iter().filter(|p| p.0 > cutoff && p.0 > 0.0).count();
    let mut sigmas: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    for s in &mut sigmas[rank..] {
        *s = 0.0;
    }
    let near: Vec<Vec<f64>> = pairs.iter().map(|p| p.1.clone()).collect();
    let mut far: Vec<Vec<f64>> = pairs[..rank]
        .iter()
        .map(|(s, _, w)| w.iter().map(|x| x / s).collect())
        .collect();
    gram_schmidt_float(&mut far);
    let far = complete_float(far, large);
    let near_m = Matrix::from_columns(small, &near)?;
    let far_m = Matrix::from_columns(large, &far)?;
    let (u, v) = if wide { (near_m, far_m) } else { (far_m, near_m) };
    let sigma = Matrix::diagonal_matrix(&sigmas, rows, cols);
    let report = numeric_verify(m, &[&u, &sigma, &v.transpose()], &[&u, &v])?;
    Ok(NumericSvd {
        u,
        sigma,
        v,
        singular_values: sigmas,
        rank,
        residual: report.reconstruction,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// ‖Π factors − A‖_F / ‖A‖_F, or the absolute residual when A = 0.
    pub reconstruction: f64,
    /// ‖QᵀQ − I‖_F for each matrix claimed orthogonal.
    pub orthogonality: Vec<f64>,
}

pub fn relative_residual(product: &Matrix<f64>, target: &Matrix<f64>) -> Result<f64> {
    let diff = product.sub(target)?.frobenius_norm();
    let scale = target.frobenius_norm();
    Ok(if scale == 0.0 { diff } else { diff / scale })
}

pub fn orthogonality_residual(q: &Matrix<f64>) -> Result<f64> {
    let qtq = q.transpose().matmul(q)?;
    Ok(qtq.sub(&Matrix::identity(q.col_count()))?.frobenius_norm())
}

pub fn numeric_verify(
    a: &Matrix<f64>,
    factors: &[&Matrix<f64>],
    orthogonal: &[&Matrix<f64>],
) -> Result<ResidualReport> {
    let mut iter = factors.iter();
    let first = iter.next().ok_or_else(|| Error::dims("numeric_verify", "no factors"))?;
    let product = iter.try_fold((*first).clone(), |acc, f| acc.matmul(f))?;
    Ok(ResidualReport {
        reconstruction: relative_residual(&product, a)?,
        orthogonality: orthogonal
            .iter()
            .map(|q| orthogonality_residual(q))
            .collect::<Result<_>>()?,
    })
}

/// All complex roots `(re, im)` of a monic polynomial, lowest degree
/// coefficient first, by Durand-Kerner iteration.
pub fn polynomial_roots(coefficients: &[f64]) -> Vec<(f64, f64)> {
    let n = coefficients.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let bound = 1.0 + coefficients[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let angle = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (bound * angle.cos(), bound * angle.sin())
        })
        .collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let eval = |x: (f64, f64)| {
        coefficients.iter().rev().fold((0.0, 0.0), |acc, &c| {
            let p = mul(acc, x);
            (p.0 + c, p.1)
        })
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let num = eval(z[i]);
            let d2 = den.0 * den.0 + den.1 * den.1;
            if d2 == 0.0 {
                continue;
            }
            let step = (
                (num.0 * den.0 + num.1 * den.1) / d2,
                (num.1 * den.0 - num.0 * den.1) / d2,
            );
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            moved = moved.max(step.0.hypot(step.1));
        }
        if moved <= 1e-15 * bound {
            break;
        }
    }
    z
}
