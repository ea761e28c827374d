use super::Matrix;
use crate::error::{Error, Result};
use num_traits::{One, Zero};

use crate::scalar::{Element, Rational};

/// Bareiss fraction-free elimination. Every division is exact.
pub fn bareiss_determinant(m: &Matrix<Rational>) -> Result<Rational> {
    require_square(m)?;
    let n = m.row_count();
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut a = m.clone();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero_elem() {
            let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero_elem()) else {
                return Ok(Rational::zero());
            };
            for j in 0..n {
                let x = a.get(k, j).clone();
                let y = a.get(swap, j).clone();
                a.set(k, j, y);
                a.set(swap, j, x);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, value);
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1))
}

/// Laplace expansion along the first row. Intended for the small matrices
/// over rings without convenient division (n ≤ 4 in practice).
pub fn cofactor_determinant<T: Element>(m: &Matrix<T>) -> Result<T> {
    require_square(m)?;
    let n = m.row_count();
    let Some(template) = m.entries().first() else {
        return Err(Error::dims("determinant", "0x0 matrix"));
    };
    Ok(expand(m, &(0..n).collect::<Vec<_>>(), 0, template))
}

fn expand<T: Element>(m: &Matrix<T>, cols: &[usize], row: usize, template: &T) -> T {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut total = template.zero_like();
    for (k, &c) in cols.iter().enumerate() {
        let x = m.get(row, c);
        if x.is_zero_elem() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
        let term = x.clone() * expand(m, &rest, row + 1, template);
        total = if k % 2 == 0 { total + term } else { total - term };
    }
    total
}

/// Partial-pivoting LU determinant for floats.
pub fn float_determinant(m: &Matrix<f64>) -> Result<f64> {
    require_square(m)?;
    let n = m.row_count();
    let mut a = m.clone();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a.get(i, k).abs().total_cmp(&a.get(j, k).abs()))
            .expect("nonempty range");
        if *a.get(p, k) == 0.0 {
            return Ok(0.0);
        }
        if p != k {
            for j in 0..n {
                let x = *a.get(k, j);
                let y = *a.get(p, j);
                a.set(k, j, y);
                a.set(p, j, x);
            }
            det = -det;
        }
        let pivot = *a.get(k, k);
        det *= pivot;
        for i in k + 1..n {
            let f = a.get(i, k) / pivot;
            for j in k..n {
                let v = a.get(i, j) - f * a.get(k, j);
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

fn require_square<T: Element>(m: &Matrix<T>) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::dims(
            "determinant",
            format!("{}x{} is not square", m.row_count(), m.col_count()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn determinants() {
        let b = Matrix::from_i64(&[&[3, -4, -4], &[-4, 3, -4], &[-4, -4, 3]]);
        assert_eq!(bareiss_determinant(&b).unwrap(), int(-245));
        assert_eq!(cofactor_determinant(&b).unwrap(), int(-245));
        assert_eq!(bareiss_determinant(&Matrix::identity(4)).unwrap(), int(1));
        let a = Matrix::from_i64(&[&[3, 1], &[0, 2]]);
        assert_eq!(bareiss_determinant(&a).unwrap(), int(6));
        let singular = Matrix::from_i64(&[&[1, 2, 3], &[2, 5, 6], &[3, 6, 9]]);
        assert_eq!(bareiss_determinant(&singular).unwrap(), int(0));
        let needs_swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_determinant(&needs_swap).unwrap(), int(-1));
        let f = Matrix::from_f64(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(float_determinant(&f).unwrap(), -1.0);
        assert!(bareiss_determinant(&Matrix::from_i64(&[&[1, 2]])).is_err());
    }
}
