//! Univariate truncated series with a denominator convention.
//!
//! A series of order `N` in convention `d` stands for `sum a_n x^n / d_n`
//! for `n = 0..=N`. Internally the plain Taylor coefficients `a_n / d_n` are
//! stored, so products and compositions are ordinary Cauchy arithmetic; the
//! convention only matters when coefficients are read or written.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::{factorial, Coeff, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Convention {
    /// `d_n = 1`
    Ogf,
    /// `d_n = n!`
    Egf,
    /// `d_n = (n!)^2`
    Degf,
}

impl Convention {
    pub fn denom(self, n: usize) -> BigInt {
        match self {
            Convention::Ogf => BigInt::from(1),
            Convention::Egf => factorial(n),
            Convention::Degf => {
                let f = factorial(n);
                &f * &f
            }
        }
    }

    pub fn denom_scalar(self, n: usize) -> Scalar {
        Scalar::from_integer(self.denom(n))
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Ogf => "OGF",
            Convention::Egf => "EGF",
            Convention::Degf => "DEGF",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "OGF" => Ok(Convention::Ogf),
            "EGF" => Ok(Convention::Egf),
            "DEGF" => Ok(Convention::Degf),
            _ => Err(Error::parse(0, format!("unknown convention {s:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Series<C = Scalar> {
    conv: Convention,
    plain: Vec<C>,
}

impl<C: Coeff> Series<C> {
    /// Builds from convention coefficients `a_0..=a_N`.
    pub fn from_coeffs(conv: Convention, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        let plain = coeffs
            .into_iter()
            .enumerate()
            .map(|(n, a)| a.scale(&conv.denom_scalar(n).recip()))
            .collect();
        Series { conv, plain }
    }

    /// Builds from plain Taylor coefficients (`a_n / d_n`).
    pub fn from_plain(conv: Convention, plain: Vec<C>) -> Self {
        assert!(!plain.is_empty(), "series needs at least one coefficient");
        Series { conv, plain }
    }

    pub fn from_fn(conv: Convention, order: usize, f: impl Fn(usize) -> C) -> Self {
        Self::from_coeffs(conv, (0..=order).map(f).collect())
    }

    pub fn zero(conv: Convention, order: usize) -> Self {
        Series { conv, plain: vec![C::zero(); order + 1] }
    }

    pub fn one(conv: Convention, order: usize) -> Self {
        Self::monomial(conv, order, 0, C::one())
    }

    /// The series `x`.
    pub fn x(conv: Convention, order: usize) -> Self {
        Self::monomial(conv, order, 1, C::one())
    }

    /// `c x^k` as a function, truncated (zero when `k > order`).
    pub fn monomial(conv: Convention, order: usize, k: usize, c: C) -> Self {
        let mut s = Self::zero(conv, order);
        if k <= order {
            s.plain[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.plain.len() - 1
    }

    pub fn convention(&self) -> Convention {
        self.conv
    }

    /// Convention coefficient `a_n`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> C {
        match self.plain.get(n) {
            Some(c) => c.scale(&self.conv.denom_scalar(n)),
            None => C::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<C> {
        (0..=self.order()).map(|n| self.coeff(n)).collect()
    }

    /// Plain Taylor coefficient of `x^n`.
    pub fn plain(&self, n: usize) -> &C {
        &self.plain[n]
    }

    pub fn plain_coeffs(&self) -> &[C] {
        &self.plain
    }

    pub fn valuation(&self) -> Option<usize> {
        self.plain.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Same function in another convention: `a_n` becomes `a_n d'_n / d_n`.
    pub fn to_convention(&self, conv: Convention) -> Self {
        Series { conv, plain: self.plain.clone() }
    }

    /// Keeps the coefficient sequence and reinterprets it under `conv`.
    pub fn reinterpret(&self, conv: Convention) -> Self {
        Self::from_coeffs(conv, self.coeffs())
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder { needed: order, have: self.order() });
        }
        Ok(Series { conv: self.conv, plain: self.plain[..=order].to_vec() })
    }

    /// Zero-pads up to `order`; meaningful for polynomials only.
    pub fn pad_polynomial(&self, order: usize) -> Self {
        let mut plain = self.plain.clone();
        plain.resize(order.max(self.order()) + 1, C::zero());
        Series { conv: self.conv, plain }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { conv: self.conv, plain: self.plain.iter().map(f).collect() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conv != other.conv {
            return Err(Error::ConventionMismatch(self.conv, other.conv));
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, C::add))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, C::sub))
    }

    fn zip(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let plain = self.plain.iter().zip(&other.plain).map(|(a, b)| f(a, b)).collect();
        Series { conv: self.conv, plain }
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, q: &Scalar) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.plain.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.plain[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Series { conv: self.conv, plain: out }
    }

    pub fn pow_u32(&self, k: u32) -> Self {
        let mut acc = Self::one(self.conv, self.order());
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.plain[0]
            .try_inv()
            .ok_or_else(|| Error::NotInvertible("constant term is not a unit".into()))?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc.add(&self.plain[j].mul(&out[k - j]));
            }
            out.push(acc.neg().mul(&inv0));
        }
        Ok(Series { conv: self.conv, plain: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Err(Error::InsufficientOrder { needed: 1, have: 0 });
        }
        let plain = (1..=n).map(|k| self.plain[k].scale(&Scalar::from_integer(k.into()))).collect();
        Ok(Series { conv: self.conv, plain })
    }

    /// `f(phi(x))` to the common order; `phi` must have no constant term.
    pub fn compose(&self, phi: &Self) -> Result<Self> {
        self.check(phi)?;
        if !phi.plain[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let mut acc = Self::zero(self.conv, self.order());
        for c in self.plain.iter().rev() {
            acc = acc.mul_unchecked(phi);
            acc.plain[0] = acc.plain[0].add(c);
        }
        Ok(acc)
    }

    /// `exp(f)` for `f` without constant term, via `E' = f' E`.
    pub fn exp(&self) -> Result<Self> {
        if !self.plain[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(C::one());
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                let term = self.plain[k].mul(&out[m - k]).scale(&Scalar::from_integer(k.into()));
                acc = acc.add(&term);
            }
            out.push(acc.scale(&Scalar::new(1.into(), m.into())));
        }
        Ok(Series { conv: self.conv, plain: out })
    }

    /// `log(f)` for `f` with constant term 1, via `f L' = f'`.
    pub fn log(&self) -> Result<Self> {
        if !self.plain[0].is_one() {
            return Err(Error::ConstantNotOne);
        }
        let n = self.order();
        let mut out: Vec<C> = vec![C::zero(); n + 1];
        for m in 1..=n {
            // m L_m = m f_m - sum_{k=1}^{m-1} k L_k f_{m-k}
            let mut acc = self.plain[m].scale(&Scalar::from_integer(m.into()));
            for k in 1..m {
                let term = out[k].mul(&self.plain[m - k]).scale(&Scalar::from_integer(k.into()));
                acc = acc.sub(&term);
            }
            out[m] = acc.scale(&Scalar::new(1.into(), m.into()));
        }
        Ok(Series { conv: self.conv, plain: out })
    }

    /// `f^alpha` for rational `alpha` and constant term 1 (binomial series).
    pub fn pow(&self, alpha: &Scalar) -> Result<Self> {
        if !self.plain[0].is_one() {
            return Err(Error::ConstantNotOne);
        }
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(C::one());
        // m P_m = sum_{k=1}^m ((alpha + 1) k - m) f_k P_{m-k}
        let alpha1 = alpha + Scalar::from_integer(1.into());
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                let w = &alpha1 * Scalar::from_integer(k.into()) - Scalar::from_integer(m.into());
                acc = acc.add(&self.plain[k].mul(&out[m - k]).scale(&w));
            }
            out.push(acc.scale(&Scalar::new(1.into(), m.into())));
        }
        Ok(Series { conv: self.conv, plain: out })
    }

    /// Compositional inverse of a series with valuation exactly one.
    ///
    /// Solved order by order: with `g` known below degree `m`, the degree-`m`
    /// coefficient of `f(g)` is `f_1 g_m` plus terms fixed by lower ones.
    pub fn reversion(&self) -> Result<Self> {
        let val = self.valuation();
        if val != Some(1) {
            return Err(Error::Valuation { expected: 1, found: val });
        }
        let inv1 = self.plain[1]
            .try_inv()
            .ok_or_else(|| Error::NotInvertible("linear coefficient is not a unit".into()))?;
        let n = self.order();
        let mut g = Self::zero(self.conv, n);
        if n >= 1 {
            g.plain[1] = inv1.clone();
        }
        for m in 2..=n {
            let fg = self.compose(&g)?;
            g.plain[m] = fg.plain[m].neg().mul(&inv1);
        }
        Ok(g)
    }
}

impl Series<Scalar> {
    /// `e^x`.
    pub fn exp_x(conv: Convention, order: usize) -> Self {
        Self::from_plain(conv, (0..=order).map(|n| Scalar::new(1.into(), factorial(n))).collect())
    }

    /// `sum x^n`.
    pub fn geometric(conv: Convention, order: usize) -> Self {
        Self::from_plain(conv, vec![Scalar::from_integer(1.into()); order + 1])
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.conv)?;
        for (n, a) in self.coeffs().iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}
