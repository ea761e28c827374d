//! Matrix files: `{"rows": [["3", "-1/2"], ["2.5", "sqrt(2)/2"]]}`.
//!
//! Entries are strings. Integers, fractions and finite decimals are read as
//! exact rationals. Sums of rational multiples of square roots are accepted
//! so that claimed orthonormal factors can be written down exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Matrix};
use crate::scalar::{canonicalize_radical, parse_rational, RadicalSum, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string tables always serialize")
    }

    /// Entries written in the notation `parse_entry` reads back.
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let rows = m
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| match x {
                        Scalar::Float(v) => format!("{v:?}"),
                        other => other.to_string(),
                    })
                    .collect()
            })
            .collect();
        MatrixFile { rows }
    }

    fn shape(&self) -> Result<(usize, usize)> {
        let cols = self.rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RaggedRows {
                    row: i + 1,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok((self.rows.len(), cols))
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize, &str)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, s)| (i + 1, j + 1, s.as_str())))
    }
}

fn malformed(row: usize, col: usize, entry: &str) -> Error {
    Error::MalformedEntry {
        row,
        col,
        entry: entry.to_string(),
    }
}

/// A rational matrix when every entry is rational, otherwise a radical one.
pub fn parse_matrix(doc: &MatrixFile) -> Result<ExactMatrix> {
    let (rows, cols) = doc.shape()?;
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, j, s) in doc.cells() {
        entries.push(parse_entry(s).ok_or_else(|| malformed(i, j, s))?);
    }
    let m = Matrix::new(rows, cols, entries)?;
    Ok(ExactMatrix::Radical(m).simplify())
}

/// Rational entries only.
pub fn parse_rational_matrix(doc: &MatrixFile) -> Result<Matrix<Rational>> {
    let (rows, cols) = doc.shape()?;
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, j, s) in doc.cells() {
        entries.push(parse_rational(s).ok_or_else(|| malformed(i, j, s))?);
    }
    Matrix::new(rows, cols, entries)
}

/// Entries as doubles. Exponent notation is accepted here as well.
pub fn parse_float_matrix(doc: &MatrixFile) -> Result<Matrix<f64>> {
    let (rows, cols) = doc.shape()?;
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, j, s) in doc.cells() {
        let x = match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => x,
            _ => parse_entry(s)
                .and_then(|r| r.to_f64().ok())
                .ok_or_else(|| malformed(i, j, s))?,
        };
        entries.push(x);
    }
    Matrix::new(rows, cols, entries)
}

pub fn parse_matrix_json(text: &str) -> Result<ExactMatrix> {
    parse_matrix(&MatrixFile::from_json(text)?)
}

pub fn read_matrix_file(path: &std::path::Path) -> Result<MatrixFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Json(format!("cannot read {}: {e}", path.display())))?;
    MatrixFile::from_json(&text)
}

/// Parses `3`, `-1/2`, `2.5`, `sqrt(2)`, `1/3*sqrt(3)`, `-sqrt(6)/6`,
/// `sqrt(1/2)`, `(7 + sqrt(13))/2` and sums of such terms.
pub fn parse_entry(text: &str) -> Option<RadicalSum> {
    let mut p = Parser {
        s: text.as_bytes(),
        i: 0,
    };
    let v = p.sum()?;
    p.ws();
    (p.i == p.s.len()).then_some(v)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.s.get(self.i).is_some_and(u8::is_ascii_whitespace) {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Option<RadicalSum> {
        let mut acc = if self.eat(b'-') {
            -self.product()?
        } else {
            self.eat(b'+');
            self.product()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc + self.product()?;
            } else if self.eat(b'-') {
                acc = acc - self.product()?;
            } else {
                return Some(acc);
            }
        }
    }

    /// Factors joined by `*` and `/`. Division is only by rationals.
    fn product(&mut self) -> Option<RadicalSum> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = acc * rhs;
            } else if self.eat(b'/') {
                let d = self.factor()?.as_rational()?;
                if d == Rational::from_integer(0.into()) {
                    return None;
                }
                acc = acc.scale(&d.recip());
            } else {
                return Some(acc);
            }
        }
    }

    fn factor(&mut self) -> Option<RadicalSum> {
        self.ws();
        if self.eat(b'(') {
            let v = self.sum()?;
            return self.eat(b')').then_some(v);
        }
        if self.s[self.i..].starts_with(b"sqrt") {
            self.i += 4;
            if !self.eat(b'(') {
                return None;
            }
            let r = self.sum()?.as_rational()?;
            if !self.eat(b')') || r.is_negative() {
                return None;
            }
            // sqrt(p/q) = sqrt(p*q)/q
            let q = r.denom().clone();
            let t = canonicalize_radical(&Rational::new(BigInt::one(), q.clone()), &(r.numer() * &q)).ok()?;
            return Some(RadicalSum::from_term(t));
        }
        let start = self.i;
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_digit() || *c == b'.') {
            self.i += 1;
        }
        let lit = std::str::from_utf8(&self.s[start..self.i]).ok()?;
        if lit.is_empty() {
            return None;
        }
        parse_rational(lit).map(RadicalSum::from_rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn file(rows: &[&[&str]]) -> MatrixFile {
        MatrixFile {
            rows: rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        }
    }

    #[test]
    fn reads_rational_matrix() {
        let m = parse_matrix_json(r#"{"rows":[["3","-1"],["-6","2"]]}"#).unwrap();
        assert_eq!(m, ExactMatrix::Rational(Matrix::from_i64(&[&[3, -1], &[-6, 2]])));
        let one = parse_matrix_json(r#"{"rows":[["1"]]}"#).unwrap();
        assert_eq!(one.shape(), (1, 1));
    }

    #[test]
    fn decimals_are_exact() {
        let m = parse_rational_matrix(&file(&[&["2.5", "-0.125", "+3", "4/6"]])).unwrap();
        assert_eq!(m.row(0), &[frac(5, 2), frac(-1, 8), int(3), frac(2, 3)]);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            parse_matrix_json(r#"{"rows":[["1","2"],["3"]]}"#),
            Err(Error::RaggedRows {
                row: 2,
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(parse_matrix_json(r#"{"rows":[]}"#), Err(Error::EmptyMatrix)));
        assert!(matches!(parse_matrix_json(r#"{"rows":[[]]}"#), Err(Error::EmptyMatrix)));
        assert!(matches!(parse_matrix_json(r#"{"cols":[]}"#), Err(Error::Json(_))));
    }

    #[test]
    fn malformed_entry_has_locus() {
        let err = parse_matrix(&file(&[&["1", "2"], &["x", "1/0"]])).unwrap_err();
        assert!(matches!(err, Error::MalformedEntry { row: 2, col: 1, .. }), "{err}");
        for bad in ["1/0", "sqrt(-2)", "", "1e3", "sqrt(2)/sqrt(3)", "2*"] {
            assert!(parse_entry(bad).is_none(), "{bad}");
        }
    }

    #[test]
    fn radical_entries() {
        let half_root2 = parse_entry("sqrt(2)/2").unwrap();
        assert_eq!(half_root2.to_string(), "1/2*sqrt(2)");
        assert_eq!(parse_entry("sqrt(1/2)").unwrap(), half_root2);
        assert_eq!(parse_entry("-1/3*sqrt(3)").unwrap().to_string(), "-1/3*sqrt(3)");
        assert_eq!(
            parse_entry("(7 + sqrt(13))/2").unwrap().to_string(),
            "7/2 + 1/2*sqrt(13)"
        );
        assert_eq!(parse_entry("sqrt(8)").unwrap().to_string(), "2*sqrt(2)");
        assert_eq!(parse_entry("sqrt(4)").unwrap().as_rational(), Some(int(2)));
        let m = parse_matrix(&file(&[&["sqrt(2)/2", "0"]])).unwrap();
        assert!(matches!(m, ExactMatrix::Radical(_)));
    }

    #[test]
    fn render_parse_round_trip() {
        let docs = [
            file(&[&["3", "-1/2"], &["2.5", "0"]]),
            file(&[&["sqrt(3)/3", "-sqrt(2)/2"], &["1 + sqrt(5)", "7/2 - 1/2*sqrt(13)"]]),
        ];
        for doc in docs {
            let m = parse_matrix(&doc).unwrap();
            let again = parse_matrix(&MatrixFile::from_matrix(&m)).unwrap();
            assert_eq!(again, m);
        }
        let f = ExactMatrix::Float(Matrix::from_f64(&[&[0.1, -2.5e-7]]));
        let back = parse_float_matrix(&MatrixFile::from_matrix(&f)).unwrap();
        assert_eq!(ExactMatrix::Float(back), f);
    }

    #[test]
    fn float_entries() {
        let m = parse_float_matrix(&file(&[&["1e-3", "1/4", "sqrt(4)"]])).unwrap();
        assert_eq!(m.row(0), &[1e-3, 0.25, 2.0]);
        assert!(parse_float_matrix(&file(&[&["inf"]])).is_err());
    }
}
