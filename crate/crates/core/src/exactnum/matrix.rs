use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_row_major(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Rational::to_f64).collect())
            .collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Clear denominators row by row. Returns the integer rows and, per row,
    /// the positive multiplier that was applied.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            out.push(row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect());
            scales.push(lcm);
        }
        (out, scales)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Rational]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Fraction-free forward elimination on an integer matrix with `n` pivot
/// columns (extra columns to the right are carried along).
///
/// After the call the leading `n x n` block is upper triangular and
/// `a[n-1][n-1]` holds the determinant of that block, up to `sign`.
/// Returns `Err(column)` if a pivot column has no nonzero entry.
fn bareiss_forward(a: &mut [Vec<BigInt>], n: usize) -> std::result::Result<i8, usize> {
    let width = a.first().map_or(0, Vec::len);
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Err(k);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Sylvester's identity guarantees the division is exact.
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign)
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// Rows are first scaled to integers, so every intermediate value is an
/// integer minor of the scaled matrix. The 0x0 determinant is 1.
pub fn bareiss_determinant(m: &RatMatrix) -> Result<Rational> {
    m.require_square()?;
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut a, scales) = m.integer_rows();
    let sign = match bareiss_forward(&mut a, n) {
        Ok(sign) => sign,
        Err(_) => return Ok(Rational::zero()),
    };
    let det = a[n - 1][n - 1].clone() * BigInt::from(sign);
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Rational::from_bigints(det, scale)
}

/// Solve `A x = b` exactly.
///
/// Runs Bareiss elimination on the integer-scaled augmented system, then
/// back-substitutes over the rationals. The solution is checked against
/// `A x = b` before it is returned.
pub fn solve_exact(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    a.require_square()?;
    let n = a.rows();
    if b.len() != n {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {n} equations",
            b.len()
        )));
    }
    let rows = b
        .iter()
        .enumerate()
        .map(|(i, bi)| {
            let mut row = a.row(i).to_vec();
            row.push(bi.clone());
            row
        })
        .collect();
    let augmented = RatMatrix::from_rows(rows)?;
    let (mut m, _) = augmented.integer_rows();
    bareiss_forward(&mut m, n).map_err(|column| Error::Singular { column })?;

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_bigint(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_bigint(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_bigint(m[i][i].clone());
    }

    if a.mul_vec(&x)? != b {
        return Err(Error::Internal(
            "exact solve failed its residual check".into(),
        ));
    }
    Ok(x)
}
