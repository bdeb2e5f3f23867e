//! Dense polynomials in one formal parameter.

use std::fmt;

use crate::coeff::{Coeff, Scalar};

/// Polynomial `c_0 + c_1 t + ... + c_d t^d` with no trailing zero coefficient.
///
/// `Poly<Poly<Scalar>>` gives polynomials in two parameters, which is how the
/// additive law of one-parameter groups is checked as a polynomial identity.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

/// Polynomial in a single parameter (`t` or `λ`) with rational coefficients.
pub type ParamPoly = Poly<Scalar>;

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The parameter itself.
    pub fn var() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul(t).add(c))
    }

    /// Substitutes another polynomial for the parameter.
    pub fn compose(&self, inner: &Poly<C>) -> Poly<C> {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul(inner).add(&Poly::constant(c.clone())))
    }

    /// Drops every power above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Generalized binomial coefficient `t(t-1)...(t-k+1)/k!` as a polynomial in `t`.
    pub fn binomial(k: usize) -> Self {
        let mut acc = Self::one();
        for i in 0..k {
            let factor = Self::new(vec![C::from_scalar(-Scalar::from_integer(i.into())), C::one()]);
            let inv = Scalar::new(1.into(), (i + 1).into());
            acc = acc.mul(&factor).scale(&inv);
        }
        acc
    }
}

impl<C: Coeff> Coeff for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(Coeff::neg).collect())
    }

    fn from_scalar(q: Scalar) -> Self {
        Self::constant(C::from_scalar(q))
    }

    fn scale(&self, q: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }

    fn try_inv(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeffs[0].try_inv().map(Self::constant),
            _ => None,
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Coeff::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{frac, int};

    fn p(v: &[i64]) -> ParamPoly {
        Poly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn canonical_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(Coeff::is_zero(&p(&[])));
    }

    #[test]
    fn binomial_values() {
        // C(t, 2) at t = 5 is 10, at t = -1 is 1, at t = 1/2 is -1/8
        let b = ParamPoly::binomial(2);
        assert_eq!(b.eval(&int(5)), int(10));
        assert_eq!(b.eval(&int(-1)), int(1));
        assert_eq!(b.eval(&frac(1, 2)), frac(-1, 8));
        assert_eq!(ParamPoly::binomial(0), ParamPoly::one());
    }

    #[test]
    fn compose_shift() {
        // (t + 1)^2 = t^2 + 2t + 1
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.compose(&p(&[1, 1])), p(&[1, 2, 1]));
    }

    #[test]
    fn inverse_only_for_units() {
        assert_eq!(p(&[2]).try_inv(), Some(ParamPoly::constant(frac(1, 2))));
        assert_eq!(p(&[1, 1]).try_inv(), None);
    }
}
