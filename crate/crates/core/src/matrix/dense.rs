use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Element, Rational, Unital};

/// Dense row-major matrix over one element type.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Element> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(
                "Matrix::new",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let row_count = rows.len();
        let mut data = Vec::with_capacity(row_count * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: row_count,
            cols,
            data,
        })
    }

    /// Stacks vectors as columns. Every column must have `rows` entries.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for (j, c) in columns.iter().enumerate() {
                if c.len() != rows {
                    return Err(Error::dims(
                        "Matrix::from_columns",
                        format!("column {j} has {} entries, expected {rows}", c.len()),
                    ));
                }
                data.push(c[i].clone());
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity_like(n: usize, template: &T) -> Self {
        let (zero, one) = (template.zero_like(), template.one_like());
        Self::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn zeros_like(rows: usize, cols: usize, template: &T) -> Self {
        let zero = template.zero_like();
        Self::from_fn(rows, cols, |_, _| zero.clone())
    }

    pub fn diagonal_like(values: &[T], rows: usize, cols: usize, template: &T) -> Self {
        let zero = template.zero_like();
        Self::from_fn(rows, cols, |i, j| {
            if i == j && i < values.len() {
                values[i].clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Element>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Element>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Columns `range` as a new matrix.
    pub fn column_slice(&self, range: std::ops::Range<usize>) -> Self {
        let start = range.start;
        Self::from_fn(self.rows, range.len(), |i, j| self.get(i, start + j).clone())
    }

    pub fn row_slice(&self, range: std::ops::Range<usize>) -> Self {
        let start = range.start;
        Self::from_fn(range.len(), self.cols, |i, j| self.get(start + i, j).clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dims(
                "matmul",
                format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            ));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: Option<T> = None;
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if a.is_zero_elem() || b.is_zero_elem() {
                        continue;
                    }
                    let p = a.clone() * b.clone();
                    acc = Some(match acc {
                        Some(s) => s + p,
                        None => p,
                    });
                }
                data.push(acc.unwrap_or_else(|| self.zero_entry(rhs)));
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    fn zero_entry(&self, other: &Self) -> T {
        self.data
            .first()
            .or_else(|| other.data.first())
            .map(T::zero_like)
            .expect("product of matrices without entries")
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims(op, format!("{:?} versus {:?}", self.shape(), rhs.shape())));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Element::is_zero_elem)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero_elem()))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        *x == x.one_like()
                    } else {
                        x.is_zero_elem()
                    }
                })
            })
    }

    pub fn trace(&self) -> Option<T> {
        let mut diag = self.diagonal().into_iter();
        let first = diag.next()?;
        Some(diag.fold(first, |acc, x| acc + x))
    }
}

impl<T: Unital> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one_elem() } else { T::zero_elem() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero_elem())
    }

    pub fn diagonal_matrix(values: &[T], rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| {
            if i == j && i < values.len() {
                values[i].clone()
            } else {
                T::zero_elem()
            }
        })
    }
}

impl Matrix<Rational> {
    /// Integer matrix from nested literals, convenient in tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::scalar::int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }
}

impl Matrix<f64> {
    pub fn from_f64(rows: &[&[f64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular literal")
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl<T: Element> fmt::Display for Matrix<T> {
    /// Bracketed rows with right-aligned columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let mut widths = vec![0; self.cols];
        for (k, c) in cells.iter().enumerate() {
            let w = &mut widths[k % self.cols.max(1)];
            *w = (*w).max(c.chars().count());
        }
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j], width = widths[j])?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}
