//! Substitutions with prefunction `f -> g (f o phi)` and their matrices.
//!
//! Column `k` of the matrix holds the coefficients of `g phi^k / d_k` in the
//! chosen denominator convention. Recovery runs the other way: `g` is read
//! from column 0, `phi` from column 1 divided by `g`, and the remaining
//! columns are checked against `g phi^k / d_k` (the Sheffer condition).

use crate::bivar::BivarSeries;
use crate::coeff::{Coeff, Scalar};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::series::{Convention, Series};
use crate::triangular::TriMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct RiordanPair {
    g: Series,
    phi: Series,
}

impl RiordanPair {
    /// `phi` must have no constant term; both series share convention and order.
    pub fn new(g: Series, phi: Series) -> Result<Self> {
        if g.convention() != phi.convention() {
            return Err(Error::ConventionMismatch(g.convention(), phi.convention()));
        }
        if g.order() != phi.order() {
            return Err(Error::OrderMismatch(g.order(), phi.order()));
        }
        if !phi.plain(0).is_zero() {
            return Err(Error::NonZeroConstant);
        }
        Ok(RiordanPair { g, phi })
    }

    /// The pair `(1, x)`.
    pub fn identity(conv: Convention, order: usize) -> Self {
        RiordanPair { g: Series::one(conv, order), phi: Series::x(conv, order) }
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn phi(&self) -> &Series {
        &self.phi
    }

    pub fn convention(&self) -> Convention {
        self.g.convention()
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// `a_0 / d_0 = alpha_1 / d_1 = 1`, i.e. the matrix has unit diagonal.
    pub fn is_unipotent(&self) -> bool {
        self.g.plain(0).is_one() && self.phi.order() >= 1 && self.phi.plain(1).is_one()
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        Ok(RiordanPair { g: self.g.truncate(order)?, phi: self.phi.truncate(order)? })
    }

    /// Image of `f` under `f -> g (f o phi)`.
    pub fn apply(&self, f: &Series) -> Result<Series> {
        self.g.mul(&f.compose(&self.phi)?)
    }
}

/// Matrix `M_{g,phi}` truncated to rows and columns `0..=n_max`.
pub fn riordan_matrix(pair: &RiordanPair, n_max: usize) -> Result<TriMatrix> {
    if n_max > pair.order() {
        return Err(Error::InsufficientOrder { needed: n_max, have: pair.order() });
    }
    let p = pair.truncate(n_max)?;
    let conv = p.convention();
    let mut columns = Vec::with_capacity(n_max + 1);
    let mut g_phi_k = p.g.clone();
    for k in 0..=n_max {
        if k > 0 {
            g_phi_k = g_phi_k.mul(&p.phi)?;
        }
        let inv_dk = conv.denom_scalar(k).recip();
        columns.push(g_phi_k.scale(&inv_dk));
    }
    let m = Matrix::from_fn(n_max + 1, n_max + 1, |n, k| columns[k].coeff(n));
    m.to_tri()
        .map_err(|_| Error::Internal("substitution matrix is not lower triangular".into()))
}

fn column_series(rows: &[Vec<Scalar>], k: usize, conv: Convention) -> Series {
    Series::from_coeffs(conv, rows.iter().map(|r| r.get(k).cloned().unwrap_or_else(Scalar::zero)).collect())
}

/// Candidate pair read from the first two columns of a (possibly rectangular) matrix.
pub fn recover_pair_rows(rows: &[Vec<Scalar>], conv: Convention) -> Result<RiordanPair> {
    if rows.is_empty() {
        return Err(Error::Recovery("empty matrix".into()));
    }
    let col0 = column_series(rows, 0, conv);
    let col1 = column_series(rows, 1, conv);
    let (Some(v0), Some(v1)) = (col0.valuation(), col1.valuation()) else {
        return Err(Error::Recovery("the first two columns must be nonzero".into()));
    };
    if v0 > v1 {
        return Err(Error::Recovery(format!(
            "column 0 starts at row {v0}, after column 1 which starts at row {v1}"
        )));
    }
    let g = col0.scale(&conv.denom_scalar(0));
    let ginv = g
        .inverse()
        .map_err(|_| Error::NotInvertible("g has no constant term; cannot divide by it".into()))?;
    let phi = col1.mul(&ginv)?.scale(&conv.denom_scalar(1));
    RiordanPair::new(g, phi).map_err(|e| match e {
        Error::NonZeroConstant => Error::Recovery("recovered phi has a constant term".into()),
        other => other,
    })
}

pub fn recover_pair(m: &TriMatrix, conv: Convention) -> Result<RiordanPair> {
    recover_pair_rows(&m.to_matrix().to_rows(), conv)
}

/// Outcome of the Sheffer test.
#[derive(Clone, Debug, PartialEq)]
pub struct ShefferReport {
    pub pair: RiordanPair,
    /// First `(column, row)` where the column differs from `g phi^k / d_k`.
    pub violation: Option<(usize, usize)>,
}

impl ShefferReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Sheffer test for a rectangular matrix given by rows; every column present
/// is compared to the truncation order `rows - 1`.
pub fn is_sheffer_rows(rows: &[Vec<Scalar>], conv: Convention) -> Result<ShefferReport> {
    let pair = recover_pair_rows(rows, conv)?;
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut g_phi_k = pair.g.clone();
    for k in 0..width {
        if k > 0 {
            g_phi_k = g_phi_k.mul(&pair.phi)?;
        }
        let expected = g_phi_k.scale(&conv.denom_scalar(k).recip());
        let column = column_series(rows, k, conv);
        if let Some(n) = (0..rows.len()).find(|&n| column.plain(n) != expected.plain(n)) {
            return Ok(ShefferReport { pair, violation: Some((k, n)) });
        }
    }
    Ok(ShefferReport { pair, violation: None })
}

pub fn is_sheffer(m: &TriMatrix, conv: Convention) -> Result<ShefferReport> {
    is_sheffer_rows(&m.to_matrix().to_rows(), conv)
}

/// Grid of `g(x) e^{y phi(x)}`; coefficient `(n, k)` read in the (EGF, OGF)
/// convention is the matrix entry `T(n, k)`.
pub fn bivariate_char_series(pair: &RiordanPair, nx: usize, ny: usize) -> Result<BivarSeries> {
    if pair.convention() != Convention::Egf {
        return Err(Error::Unsupported(format!(
            "characteristic series is defined for EGF pairs, got {}",
            pair.convention()
        )));
    }
    let p = pair.truncate(nx)?;
    let conv = (Convention::Egf, Convention::Ogf);
    let y = BivarSeries::monomial(conv, nx, ny, 0, 1, Scalar::one());
    let y_phi = BivarSeries::from_series_x(p.phi(), Convention::Ogf, ny).mul(&y)?;
    BivarSeries::from_series_x(p.g(), Convention::Ogf, ny).mul(&y_phi.exp()?)
}

/// Pair whose matrix is `M_p M_q`: `(g_p (g_q o phi_p), phi_q o phi_p)`.
pub fn riordan_compose(p: &RiordanPair, q: &RiordanPair) -> Result<RiordanPair> {
    if p.convention() != q.convention() {
        return Err(Error::ConventionMismatch(p.convention(), q.convention()));
    }
    let g = p.g.mul(&q.g.compose(&p.phi)?)?;
    let phi = q.phi.compose(&p.phi)?;
    RiordanPair::new(g, phi)
}
