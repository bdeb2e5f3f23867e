//! Truncated series in two variables.
//!
//! The grid keeps plain Taylor coefficients of `x^i y^j` for `i <= nx`,
//! `j <= ny`. Products truncate independently in each variable, which is
//! exact because every coefficient of the product depends only on lower
//! indices in both directions.

use crate::coeff::{Coeff, Scalar};
use crate::error::{Error, Result};
use crate::poly::ParamPoly;
use crate::series::{Convention, Series};

#[derive(Clone, PartialEq, Debug)]
pub struct BivarSeries {
    conv: (Convention, Convention),
    grid: Vec<Vec<Scalar>>,
}

impl BivarSeries {
    pub fn zero(conv: (Convention, Convention), nx: usize, ny: usize) -> Self {
        BivarSeries { conv, grid: vec![vec![Scalar::zero(); ny + 1]; nx + 1] }
    }

    pub fn one(conv: (Convention, Convention), nx: usize, ny: usize) -> Self {
        let mut s = Self::zero(conv, nx, ny);
        s.grid[0][0] = Scalar::one();
        s
    }

    /// Builds from plain Taylor coefficients.
    pub fn from_plain_fn(
        conv: (Convention, Convention),
        nx: usize,
        ny: usize,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Self {
        let grid = (0..=nx).map(|i| (0..=ny).map(|j| f(i, j)).collect()).collect();
        BivarSeries { conv, grid }
    }

    /// `c x^i y^j`, zero if outside the grid.
    pub fn monomial(conv: (Convention, Convention), nx: usize, ny: usize, i: usize, j: usize, c: Scalar) -> Self {
        let mut s = Self::zero(conv, nx, ny);
        if i <= nx && j <= ny {
            s.grid[i][j] = c;
        }
        s
    }

    /// Embeds a series in `x` (constant in `y`).
    pub fn from_series_x(f: &Series, cy: Convention, ny: usize) -> Self {
        Self::from_plain_fn((f.convention(), cy), f.order(), ny, |i, j| {
            if j == 0 {
                f.plain(i).clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Embeds a series in `y` (constant in `x`).
    pub fn from_series_y(f: &Series, cx: Convention, nx: usize) -> Self {
        Self::from_plain_fn((cx, f.convention()), nx, f.order(), |i, j| {
            if i == 0 {
                f.plain(j).clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// `f(y x^e)`: the series evaluated at the monomial `y x^e`.
    pub fn from_series_at_monomial(f: &Series, e: usize, conv: (Convention, Convention), nx: usize, ny: usize) -> Result<Self> {
        if ny > f.order() {
            return Err(Error::InsufficientOrder { needed: ny, have: f.order() });
        }
        Ok(Self::from_plain_fn(conv, nx, ny, |i, j| {
            if i == e * j {
                f.plain(j).clone()
            } else {
                Scalar::zero()
            }
        }))
    }

    /// Series in `x` whose coefficients are polynomials in `y`.
    pub fn from_param_series(f: &Series<ParamPoly>, cy: Convention, ny: usize) -> Self {
        Self::from_plain_fn((f.convention(), cy), f.order(), ny, |i, j| f.plain(i).coeff(j))
    }

    pub fn conventions(&self) -> (Convention, Convention) {
        self.conv
    }

    pub fn nx(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn ny(&self) -> usize {
        self.grid[0].len() - 1
    }

    pub fn plain(&self, i: usize, j: usize) -> &Scalar {
        &self.grid[i][j]
    }

    pub fn set_plain(&mut self, i: usize, j: usize, c: Scalar) {
        self.grid[i][j] = c;
    }

    /// Convention coefficient `a_{ij}` of `sum a_{ij} x^i y^j / (d_i d'_j)`.
    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        &self.grid[i][j] * self.conv.0.denom_scalar(i) * self.conv.1.denom_scalar(j)
    }

    pub fn with_conventions(&self, conv: (Convention, Convention)) -> Self {
        BivarSeries { conv, grid: self.grid.clone() }
    }

    /// Restricts to a smaller grid.
    pub fn truncate(&self, nx: usize, ny: usize) -> Result<Self> {
        if nx > self.nx() || ny > self.ny() {
            return Err(Error::InsufficientOrder { needed: nx.max(ny), have: self.nx().min(self.ny()) });
        }
        Ok(Self::from_plain_fn(self.conv, nx, ny, |i, j| self.grid[i][j].clone()))
    }

    /// Coefficient of `y^j` as a series in `x`.
    pub fn column_y(&self, j: usize) -> Series {
        Series::from_plain(self.conv.0, (0..=self.nx()).map(|i| self.grid[i][j].clone()).collect())
    }

    /// Coefficient of `x^i` as a polynomial in `y`.
    pub fn row_x(&self, i: usize) -> ParamPoly {
        ParamPoly::new(self.grid[i].clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conv != other.conv {
            return Err(Error::ConventionMismatch(self.conv.0, other.conv.0));
        }
        if self.nx() != other.nx() {
            return Err(Error::OrderMismatch(self.nx(), other.nx()));
        }
        if self.ny() != other.ny() {
            return Err(Error::OrderMismatch(self.ny(), other.ny()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_plain_fn(self.conv, self.nx(), self.ny(), |i, j| &self.grid[i][j] + &other.grid[i][j]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_plain_fn(self.conv, self.nx(), self.ny(), |i, j| &self.grid[i][j] - &other.grid[i][j]))
    }

    pub fn scale(&self, q: &Scalar) -> Self {
        Self::from_plain_fn(self.conv, self.nx(), self.ny(), |i, j| &self.grid[i][j] * q)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let (nx, ny) = (self.nx(), self.ny());
        let mut out = Self::zero(self.conv, nx, ny);
        for (i1, row) in self.grid.iter().enumerate() {
            for (j1, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=nx - i1 {
                    for j2 in 0..=ny - j1 {
                        let b = &other.grid[i2][j2];
                        if !b.is_zero() {
                            out.grid[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow_u32(&self, k: u32) -> Self {
        let mut acc = Self::one(self.conv, self.nx(), self.ny());
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Inverse when the constant term is nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.grid[0][0]
            .try_inv()
            .ok_or_else(|| Error::NotInvertible("bivariate constant term is zero".into()))?;
        // 1/F = c0 * sum_k (1 - c0 F)^k, and 1 - c0 F has no constant term
        let one = Self::one(self.conv, self.nx(), self.ny());
        let q = one.sub(&self.scale(&c0))?;
        let mut acc = one.clone();
        for _ in 0..(self.nx() + self.ny()) {
            acc = one.add(&q.mul_unchecked(&acc))?;
        }
        Ok(acc.scale(&c0))
    }

    /// `exp(F)` for `F` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.grid[0][0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let mut acc = Self::one(self.conv, self.nx(), self.ny());
        // Horner on sum F^k / k!, which terminates at total degree nx + ny
        for k in (1..=self.nx() + self.ny()).rev() {
            let inv_k = Scalar::new(1.into(), k.into());
            acc = Self::one(self.conv, self.nx(), self.ny()).add(&self.mul_unchecked(&acc).scale(&inv_k))?;
        }
        Ok(acc)
    }

    /// Divides by `x`; fails unless every `y^j` coefficient at `x^0` vanishes.
    /// The `x` order drops by one.
    pub fn div_x(&self) -> Result<Self> {
        if self.grid[0].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInvertible("series is not divisible by x".into()));
        }
        if self.nx() == 0 {
            return Err(Error::InsufficientOrder { needed: 1, have: 0 });
        }
        Ok(Self::from_plain_fn(self.conv, self.nx() - 1, self.ny(), |i, j| self.grid[i + 1][j].clone()))
    }

    /// Substitutes `y -> c y`.
    pub fn scale_y(&self, c: &Scalar) -> Self {
        let mut pw = Scalar::one();
        let mut out = self.clone();
        for j in 0..=self.ny() {
            for i in 0..=self.nx() {
                out.grid[i][j] = &self.grid[i][j] * &pw;
            }
            pw *= c;
        }
        out
    }

    /// `f(self)` for a univariate `f`, requiring `self(0, 0) = 0`.
    ///
    /// When `self` is divisible by `x` only `f` up to `x^nx` matters;
    /// otherwise `f` must be known to total degree `nx + ny`.
    pub fn substitute_into(&self, f: &Series) -> Result<Self> {
        if !self.grid[0][0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let divisible_by_x = self.grid[0].iter().all(Scalar::is_zero);
        let needed = if divisible_by_x { self.nx() } else { self.nx() + self.ny() };
        if f.order() < needed {
            return Err(Error::InsufficientOrder { needed, have: f.order() });
        }
        let mut acc = Self::zero(self.conv, self.nx(), self.ny());
        for k in (0..=needed).rev() {
            acc = acc.mul_unchecked(self);
            acc.grid[0][0] += f.plain(k);
        }
        Ok(acc)
    }

    /// Entry-wise equality on the common grid; returns the first difference.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let nx = self.nx().min(other.nx());
        let ny = self.ny().min(other.ny());
        for i in 0..=nx {
            for j in 0..=ny {
                if self.grid[i][j] != other.grid[i][j] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    const EO: (Convention, Convention) = (Convention::Egf, Convention::Ogf);

    #[test]
    fn stirling_characteristic_series() {
        // exp(y (e^x - 1)); coefficient of x^4 y^2 / 4! is S(4, 2) = 7
        let (nx, ny) = (6, 4);
        let phi = Series::exp_x(Convention::Egf, nx).sub(&Series::one(Convention::Egf, nx)).unwrap();
        let arg = BivarSeries::from_series_x(&phi, Convention::Ogf, ny)
            .mul(&BivarSeries::monomial(EO, nx, ny, 0, 1, int(1)))
            .unwrap();
        let e = arg.exp().unwrap();
        assert_eq!(e.coeff(4, 2), int(7));
        assert_eq!(e.coeff(6, 3), int(90));
    }

    #[test]
    fn inverse_round_trip() {
        let f = BivarSeries::from_plain_fn(EO, 4, 3, |i, j| int(1 + (i * 3 + j) as i64 % 5));
        let inv = f.inverse().unwrap();
        assert_eq!(f.mul(&inv).unwrap(), BivarSeries::one(EO, 4, 3));
    }

    #[test]
    fn substitution_with_pure_y_terms() {
        // f(x + y) with f = x^2: x^2 + 2xy + y^2
        let og = (Convention::Ogf, Convention::Ogf);
        let s = BivarSeries::from_plain_fn(og, 3, 3, |i, j| int(((i, j) == (1, 0) || (i, j) == (0, 1)) as i64));
        let f = Series::monomial(Convention::Ogf, 6, 2, int(1));
        let out = s.substitute_into(&f).unwrap();
        assert_eq!(out.plain(2, 0), &int(1));
        assert_eq!(out.plain(1, 1), &int(2));
        assert_eq!(out.plain(0, 2), &int(1));
        let short = Series::monomial(Convention::Ogf, 4, 2, int(1));
        assert!(matches!(s.substitute_into(&short), Err(Error::InsufficientOrder { .. })));
    }
}
