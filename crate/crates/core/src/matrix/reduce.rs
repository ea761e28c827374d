//! Gauss-Jordan elimination and what is built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{common_denominator, Element, Field, QuadRational, Rational};

/// Elementary row operation, as recorded in [`RrefResult::step_log`].
#[derive(Debug, Clone, PartialEq)]
pub enum RowOp<T> {
    Swap(usize, usize),
    Scale {
        row: usize,
        factor: T,
    },
    /// `row[target] += factor · row[source]`
    AddMultiple {
        target: usize,
        source: usize,
        factor: T,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RrefResult<T> {
    pub reduced: Matrix<T>,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
    pub step_log: Vec<RowOp<T>>,
}

fn apply<T: Element>(m: &mut Matrix<T>, op: &RowOp<T>) {
    let cols = m.col_count();
    match op {
        RowOp::Swap(a, b) => {
            for j in 0..cols {
                let x = m.get(*a, j).clone();
                let y = m.get(*b, j).clone();
                m.set(*a, j, y);
                m.set(*b, j, x);
            }
        }
        RowOp::Scale { row, factor } => {
            for j in 0..cols {
                let x = m.get(*row, j).clone() * factor.clone();
                m.set(*row, j, x);
            }
        }
        RowOp::AddMultiple { target, source, factor } => {
            for j in 0..cols {
                let s = m.get(*source, j);
                if s.is_zero_elem() {
                    continue;
                }
                let x = m.get(*target, j).clone() + factor.clone() * s.clone();
                m.set(*target, j, x);
            }
        }
    }
}

/// Applies a recorded step log to `m`.
pub fn replay<T: Element>(m: &Matrix<T>, log: &[RowOp<T>]) -> Matrix<T> {
    let mut out = m.clone();
    for op in log {
        apply(&mut out, op);
    }
    out
}

/// Reduced row echelon form with leading ones. The pivot in each column is
/// the first nonzero entry at or below the current row.
pub fn rref<T: Field>(m: &Matrix<T>) -> RrefResult<T> {
    let mut a = m.clone();
    let mut log = Vec::new();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.col_count() {
        if row == a.row_count() {
            break;
        }
        let Some(p) = (row..a.row_count()).find(|&i| !a.get(i, col).is_zero_elem()) else {
            continue;
        };
        let mut push = |a: &mut Matrix<T>, op: RowOp<T>| {
            apply(a, &op);
            log.push(op);
        };
        if p != row {
            push(&mut a, RowOp::Swap(p, row));
        }
        let lead = a.get(row, col).clone();
        if lead != lead.one_like() {
            let factor = lead.inv().expect("pivot is nonzero");
            push(&mut a, RowOp::Scale { row, factor });
        }
        for i in 0..a.row_count() {
            if i == row {
                continue;
            }
            let x = a.get(i, col).clone();
            if x.is_zero_elem() {
                continue;
            }
            push(
                &mut a,
                RowOp::AddMultiple {
                    target: i,
                    source: row,
                    factor: -x,
                },
            );
        }
        pivots.push(col);
        row += 1;
    }
    RrefResult {
        rank: pivots.len(),
        reduced: a,
        pivot_columns: pivots,
        step_log: log,
    }
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(m).rank
}

/// Scalar types with a canonical representative for a vector's direction.
pub trait CanonicalDirection: Field {
    fn canonicalize_direction(v: Vec<Self>) -> Vec<Self>;
}

impl CanonicalDirection for Rational {
    /// Primitive integer vector with first nonzero entry positive.
    fn canonicalize_direction(v: Vec<Rational>) -> Vec<Rational> {
        primitive_integer_vector(&v)
    }
}

impl CanonicalDirection for QuadRational {
    /// Scaled so the first nonzero entry is exactly one.
    fn canonicalize_direction(v: Vec<QuadRational>) -> Vec<QuadRational> {
        let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
            return v;
        };
        let inv = lead.inv().expect("nonzero lead");
        v.iter().map(|x| x.clone() * inv.clone()).collect()
    }
}

/// Clears denominators, divides by the gcd and makes the first nonzero
/// entry positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let negative = ints.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    ints.into_iter()
        .map(|x| {
            let q = x / &g;
            Rational::from_integer(if negative { -q } else { q })
        })
        .collect()
}

/// One basis vector per free column. The back-substitution vectors are
/// brought to reduced echelon form as rows, so the basis does not depend on
/// which columns happened to be free, and each vector is then put in
/// canonical direction form.
pub fn nullspace_basis<T: CanonicalDirection>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let raw = raw_nullspace(m);
    if raw.is_empty() {
        return raw;
    }
    let stacked = Matrix::from_rows(raw).expect("equal lengths");
    rref(&stacked)
        .reduced
        .rows_vec()
        .into_iter()
        .map(T::canonicalize_direction)
        .collect()
}

/// Back-substitution basis with each free variable set to one.
pub fn raw_nullspace<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let n = m.col_count();
    let Some(template) = m.entries().first() else {
        return Vec::new();
    };
    let zero = template.zero_like();
    let one = template.one_like();
    let r = rref(m);
    let free: Vec<usize> = (0..n).filter(|c| !r.pivot_columns.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); n];
            v[f] = one.clone();
            for (i, &p) in r.pivot_columns.iter().enumerate() {
                v[p] = -r.reduced.get(i, f).clone();
            }
            v
        })
        .collect()
}

/// Exact inverse by reducing `[m | I]`.
pub fn inverse<T: Field>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::dims(
            "inverse",
            format!("{}x{} is not square", m.row_count(), m.col_count()),
        ));
    }
    let n = m.row_count();
    let Some(template) = m.entries().first() else {
        return Ok(m.clone());
    };
    let id = Matrix::identity_like(n, template);
    let augmented = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else {
            id.get(i, j - n).clone()
        }
    });
    let r = rref(&augmented);
    if r.pivot_columns.iter().take_while(|&&c| c < n).count() < n {
        return Err(Error::SingularMatrix);
    }
    Ok(r.reduced.column_slice(n..2 * n))
}
