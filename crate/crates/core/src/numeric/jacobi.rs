use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::NumericOptions;

/// Eigenvalues in descending order with matching orthonormal columns of `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub eigenvalues: Vec<f64>,
    pub q: Matrix<f64>,
    pub sweeps: usize,
}

fn off_diagonal(a: &[Vec<f64>]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                sum += x * x;
            }
        }
    }
    sum.sqrt()
}

pub(crate) fn check_symmetric(s: &Matrix<f64>) -> Result<()> {
    if !s.is_square() {
        return Err(Error::dims(
            "jacobi_symmetric_eig",
            format!("{}x{} is not square", s.row_count(), s.col_count()),
        ));
    }
    let scale = s.frobenius_norm().max(f64::MIN_POSITIVE);
    let n = s.row_count();
    for i in 0..n {
        for j in 0..i {
            if (s.get(i, j) - s.get(j, i)).abs() > 1e-12 * scale {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// Applies the rotation in the `(p, q)` plane that zeroes `a[p][q]`,
/// accumulating it into `v`.
pub(crate) fn rotate(a: &mut [Vec<f64>], v: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let n = a.len();
    for row in a.iter_mut() {
        let (kp, kq) = (row[p], row[q]);
        row[p] = c * kp - s * kq;
        row[q] = s * kp + c * kq;
    }
    #[allow(clippy::needless_range_loop)]
    for k in 0..n {
        let (pk, qk) = (a[p][k], a[q][k]);
        a[p][k] = c * pk - s * qk;
        a[q][k] = s * pk + c * qk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for row in v.iter_mut() {
        let (kp, kq) = (row[p], row[q]);
        row[p] = c * kp - s * kq;
        row[q] = s * kp + c * kq;
    }
}

/// Cyclic-by-row Jacobi rotations until the off-diagonal mass falls below
/// `off_diagonal_tol · ‖S‖_F`.
pub fn jacobi_symmetric_eig(s: &Matrix<f64>, opts: &NumericOptions) -> Result<SymmetricEigen> {
    opts.validate()?;
    check_symmetric(s)?;
    let n = s.row_count();
    let mut a = s.rows_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let target = opts.off_diagonal_tol * s.frobenius_norm();
    let mut sweeps = 0;
    while off_diagonal(&a) > target {
        if sweeps == opts.sweep_limit {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let eigenvalues = order.iter().map(|&i| a[i][i]).collect();
    let q = Matrix::from_fn(n, n, |i, j| v[i][order[j]]);
    Ok(SymmetricEigen { eigenvalues, q, sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_gram() {
        let e = jacobi_symmetric_eig(
            &Matrix::from_f64(&[&[29.0, 20.0], &[20.0, 29.0]]),
            &NumericOptions::default(),
        )
        .unwrap();
        assert!((e.eigenvalues[0] - 49.0).abs() < 1e-12);
        assert!((e.eigenvalues[1] - 9.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let e = jacobi_symmetric_eig(
            &Matrix::from_f64(&[&[3.0, 0.0], &[0.0, 1.0]]),
            &NumericOptions::default(),
        )
        .unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 1.0]);
        assert!(e.q.is_identity());
        assert_eq!(e.sweeps, 0);
        let e = jacobi_symmetric_eig(
            &Matrix::from_f64(&[&[1.0, 0.0], &[0.0, 3.0]]),
            &NumericOptions::default(),
        )
        .unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(e.q, Matrix::from_f64(&[&[0.0, 1.0], &[1.0, 0.0]]));
    }

    #[test]
    fn surd_spectrum_numerically() {
        let s = Matrix::from_f64(&[&[1.0, 2.0, 3.0], &[2.0, 5.0, 6.0], &[3.0, 6.0, 9.0]]);
        let e = jacobi_symmetric_eig(&s, &NumericOptions::default()).unwrap();
        let r = 185f64.sqrt();
        let expected = [(15.0 + r) / 2.0, (15.0 - r) / 2.0, 0.0];
        for (x, y) in e.eigenvalues.iter().zip(expected) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let o = NumericOptions::default();
        assert!(matches!(
            jacobi_symmetric_eig(&Matrix::from_f64(&[&[1.0, 2.0], &[0.0, 1.0]]), &o),
            Err(Error::NotSymmetric)
        ));
        assert!(matches!(
            jacobi_symmetric_eig(&Matrix::from_f64(&[&[1.0, 2.0]]), &o),
            Err(Error::DimensionMismatch { .. })
        ));
        let one_sweep = NumericOptions {
            sweep_limit: 1,
            off_diagonal_tol: 1e-300,
            ..o
        };
        let s = Matrix::from_f64(&[&[4.0, 1.0, 2.0], &[1.0, 3.0, 0.5], &[2.0, 0.5, 1.0]]);
        assert!(matches!(
            jacobi_symmetric_eig(&s, &one_sweep),
            Err(Error::NoConvergence { sweeps: 1 })
        ));
    }
}
