//! Dense rectangular matrices.
//!
//! Used where lower-triangularity cannot be assumed: operator matrices in the
//! monomial basis (`a` lowers degree) and Stirling matrices of words with
//! several annihilators, whose rows run past the diagonal.

use crate::coeff::{Coeff, Scalar};
use crate::error::{Error, Result};
use crate::poly::ParamPoly;
use crate::triangular::TriMatrix;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<C = Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Matrix<C> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Rows must all have the same length.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::SizeMismatch(cols, bad.len()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.data[i * self.cols + j] = c;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// The leading square block as a triangular matrix, if it is lower triangular
    /// and nothing to the right of it is nonzero.
    pub fn to_tri(&self) -> Result<TriMatrix<C>> {
        if !self.is_lower_triangular() {
            return Err(Error::Unsupported("matrix is not lower triangular".into()));
        }
        let n = self.rows.min(self.cols);
        Ok(TriMatrix::from_fn(n, |i, j| self.get(i, j).clone()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(self.cols, other.rows));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Leading `rows x cols` block.
    pub fn block(&self, rows: usize, cols: usize) -> Result<Self> {
        if rows > self.rows || cols > self.cols {
            return Err(Error::TruncationTooLarge { n: rows.max(cols), size: self.rows.min(self.cols) });
        }
        Ok(Self::from_fn(rows, cols, |i, j| self.get(i, j).clone()))
    }
}

impl Matrix<Scalar> {
    /// `sum_{k <= order} (lambda H)^k / k!` with entries polynomials in `lambda`.
    ///
    /// Exact up to `lambda^order` for the square matrix given; when `H` stands
    /// for an operator that raises degree, callers pad the size so that the
    /// rows they read are not affected by truncation.
    pub fn exp_lambda(&self, order: usize) -> Result<Matrix<ParamPoly>> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch(self.rows, self.cols));
        }
        let n = self.rows;
        let mut out = Matrix::<ParamPoly>::identity(n);
        let mut power = Matrix::<Scalar>::identity(n);
        let mut fact = Scalar::one();
        for k in 1..=order {
            power = power.mul(self)?;
            fact *= Scalar::from_integer(k.into());
            let inv = fact.recip();
            for i in 0..n {
                for j in 0..n {
                    let c = power.get(i, j);
                    if !c.is_zero() {
                        let term = ParamPoly::monomial(c * &inv, k);
                        let cur = out.get(i, j).add(&term);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }
}
