//! Truncated lower-triangular matrices.
//!
//! A row-finite lower-triangular matrix over the naturals is handled through
//! its truncations `[0..n] x [0..n]`. Truncation is an algebra morphism, so
//! products, exponentials, logarithms and powers computed on a truncation
//! agree with the truncation of the infinite result.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Coeff, Scalar};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{ParamPoly, Poly};

/// Membership classes, from most to least specific.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixClass {
    /// Unit diagonal.
    #[serde(rename = "UT")]
    Unipotent,
    /// Zero diagonal (locally nilpotent).
    #[serde(rename = "NT")]
    Nilpotent,
    /// Invertible diagonal matrix.
    #[serde(rename = "D_inv")]
    DiagonalInvertible,
    /// Nonzero diagonal.
    #[serde(rename = "T_inv")]
    Invertible,
    #[serde(rename = "general")]
    General,
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixClass::Unipotent => "UT",
            MatrixClass::Nilpotent => "NT",
            MatrixClass::DiagonalInvertible => "D_inv",
            MatrixClass::Invertible => "T_inv",
            MatrixClass::General => "general",
        })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TriMatrix<C = Scalar> {
    /// Row `i` holds columns `0..=i`.
    rows: Vec<Vec<C>>,
}

impl<C: Coeff> TriMatrix<C> {
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> C) -> Self {
        TriMatrix { rows: (0..size).map(|i| (0..=i).map(|j| f(i, j)).collect()).collect() }
    }

    /// Builds from rows; entries above the diagonal must be zero.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() < i + 1 {
                return Err(Error::SizeMismatch(i + 1, row.len()));
            }
            if row.iter().skip(i + 1).any(|c| !c.is_zero()) {
                return Err(Error::Unsupported(format!("nonzero entry above the diagonal in row {i}")));
            }
            out.push(row.into_iter().take(i + 1).collect());
        }
        Ok(TriMatrix { rows: out })
    }

    pub fn zero(size: usize) -> Self {
        Self::from_fn(size, |_, _| C::zero())
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn diagonal(diag: Vec<C>) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i].clone() } else { C::zero() })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(i, j)`; zero above the diagonal.
    pub fn get(&self, i: usize, j: usize) -> C {
        if j > i {
            C::zero()
        } else {
            self.rows[i][j].clone()
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &C {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        assert!(j <= i, "entry ({i}, {j}) is above the diagonal");
        self.rows[i][j] = c;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.rows[i]
    }

    pub fn diag(&self) -> Vec<C> {
        (0..self.size()).map(|i| self.rows[i][i].clone()).collect()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TriMatrix<D> {
        TriMatrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn to_matrix(&self) -> Matrix<C> {
        Matrix::from_fn(self.size(), self.size(), |i, j| self.get(i, j))
    }

    pub fn class(&self) -> MatrixClass {
        let diag = self.diag();
        let off_diag_zero = (0..self.size()).all(|i| (0..i).all(|j| self.rows[i][j].is_zero()));
        if diag.iter().all(Coeff::is_one) {
            MatrixClass::Unipotent
        } else if diag.iter().all(Coeff::is_zero) {
            MatrixClass::Nilpotent
        } else if diag.iter().all(|d| d.try_inv().is_some()) {
            if off_diag_zero {
                MatrixClass::DiagonalInvertible
            } else {
                MatrixClass::Invertible
            }
        } else {
            MatrixClass::General
        }
    }

    pub fn is_unipotent(&self) -> bool {
        self.class() == MatrixClass::Unipotent
    }

    pub fn is_strictly_lower(&self) -> bool {
        self.diag().iter().all(Coeff::is_zero)
    }

    /// The `[0..=n] x [0..=n]` corner.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n >= self.size() {
            return Err(Error::TruncationTooLarge { n, size: self.size() });
        }
        Ok(TriMatrix { rows: self.rows[..=n].to_vec() })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_fn(self.size(), |i, j| self.rows[i][j].add(&other.rows[i][j])))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_fn(self.size(), |i, j| self.rows[i][j].sub(&other.rows[i][j])))
    }

    pub fn scale(&self, q: &Scalar) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.size();
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..=i {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..=k {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] = out.rows[i][j].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Inverse of a matrix with unit diagonal entries, by forward substitution.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.size();
        let mut inv_diag = Vec::with_capacity(n);
        for (i, d) in self.diag().iter().enumerate() {
            inv_diag.push(d.try_inv().ok_or(Error::ZeroDiagonal(i))?);
        }
        let mut out = Self::zero(n);
        for j in 0..n {
            out.rows[j][j] = inv_diag[j].clone();
            for i in j + 1..n {
                let mut acc = C::zero();
                for k in j..i {
                    acc = acc.add(&self.rows[i][k].mul(&out.rows[k][j]));
                }
                out.rows[i][j] = acc.neg().mul(&inv_diag[i]);
            }
        }
        Ok(out)
    }

    /// Integer power; negative exponents need an invertible diagonal.
    pub fn pow_int(&self, p: i64) -> Result<Self> {
        let base = if p < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity(self.size());
        for _ in 0..p.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        Ok(acc)
    }

    /// Splits `M = D U` with `D = diag(M)` and `U` unipotent.
    pub fn decompose(&self) -> Result<(Self, Self)> {
        let diag = self.diag();
        let mut inv = Vec::with_capacity(diag.len());
        for (i, d) in diag.iter().enumerate() {
            inv.push(d.try_inv().ok_or(Error::ZeroDiagonal(i))?);
        }
        let u = Self::from_fn(self.size(), |i, j| inv[i].mul(&self.rows[i][j]));
        Ok((Self::diagonal(diag), u))
    }

    /// Exponential of a strictly lower matrix; the series stops at `H^(size-1)`.
    pub fn mat_exp(&self) -> Result<Self> {
        if !self.is_strictly_lower() {
            return Err(Error::WrongClass { expected: MatrixClass::Nilpotent, found: self.class() });
        }
        let n = self.size();
        let mut acc = Self::identity(n);
        let mut power = Self::identity(n);
        let mut fact = Scalar::one();
        for k in 1..n {
            power = power.mul_unchecked(self);
            fact *= Scalar::from_integer(k.into());
            acc = acc.add(&power.scale(&fact.recip()))?;
        }
        Ok(acc)
    }

    /// Logarithm of a unipotent matrix, `sum (-1)^(k-1) N^k / k` with `N = M - I`.
    pub fn mat_log(&self) -> Result<Self> {
        if !self.is_unipotent() {
            return Err(Error::WrongClass { expected: MatrixClass::Unipotent, found: self.class() });
        }
        let n = self.size();
        let nil = self.sub(&Self::identity(n))?;
        let mut acc = Self::zero(n);
        let mut power = Self::identity(n);
        for k in 1..n {
            power = power.mul_unchecked(&nil);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Scalar::new(sign.into(), k.into())))?;
        }
        Ok(acc)
    }
}

impl TriMatrix<Scalar> {
    /// `M^t` for formal `t` as `sum_k C(t, k) N^k`; entry `(n, k)` has degree at most `n - k`.
    pub fn mat_power(&self) -> Result<TriMatrix<ParamPoly>> {
        if !self.is_unipotent() {
            return Err(Error::WrongClass { expected: MatrixClass::Unipotent, found: self.class() });
        }
        let n = self.size();
        let nil = self.sub(&Self::identity(n))?;
        let mut acc = TriMatrix::<ParamPoly>::identity(n);
        let mut power = Self::identity(n);
        for k in 1..n {
            power = power.mul_unchecked(&nil);
            let b = ParamPoly::binomial(k);
            acc = acc.add(&power.map(|c| b.scale(c)))?;
        }
        Ok(acc)
    }

    /// `M^t` computed as `exp(t log M)`; independent of [`Self::mat_power`].
    pub fn mat_power_via_log(&self) -> Result<TriMatrix<ParamPoly>> {
        let h = self.mat_log()?;
        h.map(|c| ParamPoly::monomial(c.clone(), 1)).mat_exp()
    }

    /// `M^t` at a rational `t`.
    pub fn mat_power_at(&self, t: &Scalar) -> Result<Self> {
        Ok(self.mat_power()?.eval(t))
    }

    /// `sum_{k <= order} (lambda H)^k / k!` for any triangular `H`.
    ///
    /// Equals `mat_exp(lambda H)` when `H` is strictly lower and `order >= size - 1`;
    /// otherwise it is the exponential truncated in `lambda`.
    pub fn exp_lambda(&self, order: usize) -> TriMatrix<ParamPoly> {
        let n = self.size();
        let mut acc = TriMatrix::<ParamPoly>::identity(n);
        let mut power = Self::identity(n);
        let mut fact = Scalar::one();
        for k in 1..=order {
            power = power.mul_unchecked(self);
            fact *= Scalar::from_integer(k.into());
            let inv = fact.recip();
            acc = acc
                .add(&power.map(|c| ParamPoly::monomial(c * &inv, k)))
                .expect("sizes agree");
        }
        acc
    }
}

/// Polynomials in two parameters `t` (inner) and `s` (outer).
pub type BiParamPoly = Poly<ParamPoly>;

impl TriMatrix<Scalar> {
    /// Checks `M^t M^s = M^(t + s)` with `t` and `s` independent indeterminates,
    /// entry by entry in `Q[t, s]`; returns the first differing entry.
    pub fn power_group_law_violation(&self) -> Result<Option<(usize, usize)>> {
        let p = self.mat_power()?;
        let in_t = p.map(|q| BiParamPoly::constant(q.clone()));
        let in_s = p.map(|q| q.map(|c| ParamPoly::constant(c.clone())));
        let t_plus_s = BiParamPoly::new(vec![ParamPoly::var(), ParamPoly::one()]);
        let in_sum = p.map(|q| q.map(|c| ParamPoly::constant(c.clone())).compose(&t_plus_s));
        Ok(first_difference(&in_t.mul(&in_s)?, &in_sum))
    }
}

impl TriMatrix<ParamPoly> {
    pub fn eval(&self, t: &Scalar) -> TriMatrix<Scalar> {
        self.map(|p| p.eval(t))
    }

    /// Largest entry degree minus the distance to the diagonal; `None` when
    /// every entry `(n, k)` has degree at most `n - k`.
    pub fn degree_bound_violation(&self) -> Option<(usize, usize)> {
        (0..self.size())
            .flat_map(|i| (0..=i).map(move |j| (i, j)))
            .find(|&(i, j)| self.rows[i][j].degree().is_some_and(|d| d > i - j))
    }
}

/// Why a family failed to be a one-parameter group.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupCheckError {
    #[error("family(0) differs from the identity at ({row}, {col})")]
    Identity { row: usize, col: usize },
    #[error("family({t1}) * family({t2}) != family({t1} + {t2}) at ({row}, {col})")]
    Law { t1: Scalar, t2: Scalar, row: usize, col: usize },
    #[error("generator: {0}")]
    Generator(Error),
}

/// Checks `family(t1) family(t2) = family(t1 + t2)` on the samples and
/// returns the generator `log(family(1))`.
#[allow(clippy::result_large_err)]
pub fn one_param_group_check(
    family: impl Fn(&Scalar) -> TriMatrix<Scalar>,
    samples: &[(Scalar, Scalar)],
) -> Result<TriMatrix<Scalar>, GroupCheckError> {
    let id = family(&Scalar::zero());
    if let Some((row, col)) = first_difference(&id, &TriMatrix::identity(id.size())) {
        return Err(GroupCheckError::Identity { row, col });
    }
    for (t1, t2) in samples {
        let lhs = family(t1).mul(&family(t2)).map_err(GroupCheckError::Generator)?;
        let rhs = family(&(t1 + t2));
        if let Some((row, col)) = first_difference(&lhs, &rhs) {
            return Err(GroupCheckError::Law { t1: t1.clone(), t2: t2.clone(), row, col });
        }
    }
    family(&Scalar::one()).mat_log().map_err(GroupCheckError::Generator)
}

pub fn first_difference<C: Coeff>(a: &TriMatrix<C>, b: &TriMatrix<C>) -> Option<(usize, usize)> {
    let n = a.size().min(b.size());
    (0..n)
        .flat_map(|i| (0..=i).map(move |j| (i, j)))
        .find(|&(i, j)| a.rows[i][j] != b.rows[i][j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{frac, int};

    fn stirling7() -> TriMatrix {
        let rows: [&[i64]; 7] = [
            &[1],
            &[0, 1],
            &[0, 1, 1],
            &[0, 1, 3, 1],
            &[0, 1, 7, 6, 1],
            &[0, 1, 15, 25, 10, 1],
            &[0, 1, 31, 90, 65, 15, 1],
        ];
        TriMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect()).unwrap()
    }

    #[test]
    fn truncation() {
        let id = TriMatrix::<Scalar>::identity(6);
        assert_eq!(id.truncate(3).unwrap(), TriMatrix::identity(4));
        let t = stirling7().truncate(3).unwrap();
        assert_eq!(t.row(3), &[int(0), int(1), int(3), int(1)]);
        assert_eq!(t.row(2), &[int(0), int(1), int(1)]);
        assert_eq!(stirling7().truncate(7), Err(Error::TruncationTooLarge { n: 7, size: 7 }));
    }

    #[test]
    fn classes() {
        assert_eq!(TriMatrix::<Scalar>::identity(3).class(), MatrixClass::Unipotent);
        assert_eq!(TriMatrix::<Scalar>::zero(3).class(), MatrixClass::Nilpotent);
        assert_eq!(TriMatrix::diagonal(vec![int(1), int(2)]).class(), MatrixClass::DiagonalInvertible);
        let mut m = TriMatrix::diagonal(vec![int(1), int(2)]);
        m.set(1, 0, int(5));
        assert_eq!(m.class(), MatrixClass::Invertible);
        assert_eq!(TriMatrix::diagonal(vec![int(1), int(0)]).class(), MatrixClass::General);
    }

    #[test]
    fn decomposition() {
        let s = stirling7();
        let (d, u) = s.decompose().unwrap();
        assert_eq!(d, TriMatrix::identity(7));
        assert_eq!(u, s);

        let m = TriMatrix::diagonal(vec![int(1), int(2), int(3)]);
        let (d, u) = m.decompose().unwrap();
        assert_eq!((d, u), (m.clone(), TriMatrix::identity(3)));

        let mut z = TriMatrix::diagonal(vec![int(1), int(0)]);
        z.set(1, 0, int(1));
        assert_eq!(z.decompose(), Err(Error::ZeroDiagonal(1)));
    }

    #[test]
    fn exp_log_small() {
        assert_eq!(TriMatrix::<Scalar>::zero(4).mat_exp().unwrap(), TriMatrix::identity(4));
        let mut h = TriMatrix::<Scalar>::zero(2);
        h.set(1, 0, int(1));
        assert_eq!(h.mat_exp().unwrap(), TriMatrix::identity(2).add(&h).unwrap());
        assert!(matches!(TriMatrix::<Scalar>::identity(2).mat_exp(), Err(Error::WrongClass { .. })));
        assert!(matches!(TriMatrix::<Scalar>::zero(2).mat_log(), Err(Error::WrongClass { .. })));
    }

    #[test]
    fn log_of_stirling_subdiagonal() {
        let s = stirling7().truncate(4).unwrap();
        let l = s.mat_log().unwrap();
        assert!(l.is_strictly_lower());
        for n in 1..5usize {
            assert_eq!(l.get(n, n - 1), int((n * (n - 1) / 2) as i64));
        }
        assert_eq!(l.mat_exp().unwrap(), s);
    }

    #[test]
    fn power_endpoints_and_cube() {
        let s = stirling7();
        let p = s.mat_power().unwrap();
        assert_eq!(p.eval(&int(0)), TriMatrix::identity(7));
        assert_eq!(p.eval(&int(1)), s);
        assert_eq!(p.eval(&int(-1)), s.inverse().unwrap());
        // entry (2, 1) of M^3 from the direct product M M M
        let cube = s.mul(&s).unwrap().mul(&s).unwrap();
        assert_eq!(cube.get(2, 1), int(3));
        assert_eq!(p.eval(&int(3)).get(2, 1), int(3));
        assert_eq!(p, s.mat_power_via_log().unwrap());
        assert_eq!(p.degree_bound_violation(), None);
        assert_eq!(s.power_group_law_violation().unwrap(), None);
    }

    #[test]
    fn group_check_positive_and_negative() {
        let s = stirling7();
        let p = s.mat_power().unwrap();
        let samples = vec![(frac(1, 2), frac(1, 3)), (int(2), int(-1))];
        let gen = one_param_group_check(|t| p.eval(t), &samples).unwrap();
        assert_eq!(gen, s.mat_log().unwrap());

        let perturbed = |t: &Scalar| {
            let mut m = p.eval(t);
            if *t == frac(1, 2) {
                m.set(3, 1, m.get(3, 1) + int(1));
            }
            m
        };
        let err = one_param_group_check(perturbed, &samples).unwrap_err();
        assert!(matches!(err, GroupCheckError::Law { row: 3, .. }), "{err}");
    }
}
