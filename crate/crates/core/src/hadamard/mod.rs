//! Hadamard matrices for the balanced-array constructions.
//!
//! Built-in orders come from Sylvester doubling, Paley I and II over prime
//! fields, and Kronecker products of those. Anything else loads from the
//! `+`/`-` text format.

mod construct;
mod submatrix;

pub use construct::{hadamard_of_order, kronecker, paley, sylvester};
pub use submatrix::{find_theorem28_submatrix, max_uniform_r, Theorem28Witness};

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// `n x n` matrix with entries in `{+1, -1}` and `H H' = n I`.
///
/// Every constructor verifies the defining identity in exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMatrix {
    h: Matrix<i8>,
}

impl HadamardMatrix {
    /// Checks entries and orthogonality.
    pub fn new(h: Matrix<i8>) -> Result<Self> {
        verify(&h)?;
        Ok(HadamardMatrix { h })
    }

    pub fn order(&self) -> usize {
        self.h.rows()
    }

    pub fn matrix(&self) -> &Matrix<i8> {
        &self.h
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.h[(i, j)]
    }

    pub fn is_standardized(&self) -> bool {
        let n = self.order();
        (0..n).all(|k| self.h[(0, k)] == 1 && self.h[(k, 0)] == 1)
    }

    /// Negates rows, then columns, so that the first column and row are all `+1`.
    pub fn standardize(&self) -> HadamardMatrix {
        let n = self.order();
        let row_sign: Vec<i8> = (0..n).map(|i| self.h[(i, 0)]).collect();
        let col_sign: Vec<i8> = (0..n).map(|j| self.h[(0, j)] * row_sign[0]).collect();
        let h = Matrix::from_fn(n, n, |i, j| self.h[(i, j)] * row_sign[i] * col_sign[j]);
        debug_assert!(verify(&h).is_ok());
        HadamardMatrix { h }
    }

    /// Negates the given rows and columns (sign changes keep the property).
    pub fn signed(&self, rows: &[bool], cols: &[bool]) -> HadamardMatrix {
        let n = self.order();
        let s = |neg: bool| if neg { -1 } else { 1 };
        let h = Matrix::from_fn(n, n, |i, j| self.h[(i, j)] * s(rows[i]) * s(cols[j]));
        HadamardMatrix { h }
    }

    /// Text form: the order, then one line of `+`/`-` per row.
    pub fn to_text(&self) -> String {
        let n = self.order();
        let mut out = format!("{n}\n");
        for i in 0..n {
            out.extend(self.h.row(i).iter().map(|&x| if x > 0 { '+' } else { '-' }));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, head) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing order line"))?;
        let n: usize = head
            .parse()
            .map_err(|_| Error::parse(line, format!("expected the order, got {head:?}")))?;
        let mut rows = Vec::with_capacity(n);
        let mut last = line;
        for (line, l) in lines {
            last = line;
            if rows.len() == n {
                return Err(Error::parse(line, format!("more than {n} rows")));
            }
            let row: Vec<i8> = l
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    other => Err(Error::parse(line, format!("unexpected character {other:?}"))),
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::parse(
                    line,
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::parse(last + 1, format!("expected {n} rows, found {}", rows.len())));
        }
        HadamardMatrix::new(Matrix::from_rows(rows))
    }
}

impl fmt::Display for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Exact check of `H H' = n I` with `+-1` entries.
pub fn verify(h: &Matrix<i8>) -> Result<()> {
    if !h.is_square() || h.rows() == 0 {
        return Err(Error::NotHadamard(format!(
            "shape {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let n = h.rows();
    for i in 0..n {
        if let Some(j) = h.row(i).iter().position(|&x| x != 1 && x != -1) {
            return Err(Error::NotHadamard(format!("entry ({i},{j}) is {}", h[(i, j)])));
        }
    }
    for i in 0..n {
        for j in i..n {
            let dot: i64 = h
                .row(i)
                .iter()
                .zip(h.row(j))
                .map(|(&a, &b)| i64::from(a) * i64::from(b))
                .sum();
            let want = if i == j { n as i64 } else { 0 };
            if dot != want {
                return Err(Error::NotHadamard(format!("rows {i} and {j} have inner product {dot}")));
            }
        }
    }
    Ok(())
}
