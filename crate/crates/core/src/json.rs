//! JSON artifacts. Rationals are strings (`"3"`, `"-1/2"`), never floats.

use serde::{Deserialize, Serialize};

use crate::bivar::BivarSeries;
use crate::boson::StirlingMatrix;
use crate::coeff::{format_scalar, parse_scalar, Scalar};
use crate::error::{Error, Result};
use crate::riordan::RiordanPair;
use crate::series::{Convention, Series};
use crate::triangular::{MatrixClass, TriMatrix};

fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(format_scalar).collect()
}

fn scalars(xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| parse_scalar(s)).collect()
}

fn invalid(e: serde_json::Error) -> Error {
    Error::parse(e.column(), e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub size: usize,
    /// Row `i` holds columns `0..=i`.
    pub entries: Vec<Vec<String>>,
    pub class: MatrixClass,
}

impl MatrixJson {
    pub fn from_matrix(m: &TriMatrix) -> Self {
        MatrixJson {
            size: m.size(),
            entries: (0..m.size()).map(|i| strings(m.row(i))).collect(),
            class: m.class(),
        }
    }

    /// Checks shape and that the stated class is the computed one.
    pub fn to_matrix(&self) -> Result<TriMatrix> {
        if self.entries.len() != self.size {
            return Err(Error::SizeMismatch(self.size, self.entries.len()));
        }
        let rows = self.entries.iter().map(|r| scalars(r)).collect::<Result<Vec<_>>>()?;
        if let Some((i, r)) = rows.iter().enumerate().find(|(i, r)| r.len() != i + 1) {
            return Err(Error::SizeMismatch(i + 1, r.len()));
        }
        let m = TriMatrix::from_rows(rows)?;
        if m.class() != self.class {
            return Err(Error::WrongClass { expected: self.class, found: m.class() });
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub convention: Convention,
    pub g: Vec<String>,
    pub phi: Vec<String>,
    pub order: usize,
}

impl PairJson {
    /// Coefficients `a_n` of `sum a_n x^n / d_n`.
    pub fn from_pair(p: &RiordanPair) -> Self {
        PairJson {
            convention: p.convention(),
            g: strings(&p.g().coeffs()),
            phi: strings(&p.phi().coeffs()),
            order: p.order(),
        }
    }

    pub fn to_pair(&self) -> Result<RiordanPair> {
        for v in [&self.g, &self.phi] {
            if v.len() != self.order + 1 {
                return Err(Error::OrderMismatch(self.order, v.len().saturating_sub(1)));
            }
        }
        RiordanPair::new(
            Series::from_coeffs(self.convention, scalars(&self.g)?),
            Series::from_coeffs(self.convention, scalars(&self.phi)?),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub convention: Convention,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl SeriesJson {
    pub fn from_series(s: &Series) -> Self {
        SeriesJson { convention: s.convention(), order: s.order(), coeffs: strings(&s.coeffs()) }
    }

    pub fn to_series(&self) -> Result<Series> {
        if self.coeffs.len() != self.order + 1 {
            return Err(Error::OrderMismatch(self.order, self.coeffs.len().saturating_sub(1)));
        }
        Ok(Series::from_coeffs(self.convention, scalars(&self.coeffs)?))
    }
}

/// Grid of a bivariate series: `grid[i][j]` is the coefficient `a_{ij}` of
/// `x^i y^j / (d_i d_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivarJson {
    pub conventions: (Convention, Convention),
    pub orders: (usize, usize),
    pub grid: Vec<Vec<String>>,
}

impl BivarJson {
    pub fn from_bivar(b: &BivarSeries) -> Self {
        BivarJson {
            conventions: b.conventions(),
            orders: (b.nx(), b.ny()),
            grid: (0..=b.nx()).map(|i| (0..=b.ny()).map(|j| format_scalar(&b.coeff(i, j))).collect()).collect(),
        }
    }

    pub fn to_bivar(&self) -> Result<BivarSeries> {
        let (nx, ny) = self.orders;
        if self.grid.len() != nx + 1 || self.grid.iter().any(|r| r.len() != ny + 1) {
            return Err(Error::SizeMismatch(nx + 1, self.grid.len()));
        }
        let grid = self.grid.iter().map(|r| scalars(r)).collect::<Result<Vec<_>>>()?;
        let (cx, cy) = self.conventions;
        Ok(BivarSeries::from_plain_fn(self.conventions, nx, ny, |i, j| {
            &grid[i][j] / (cx.denom_scalar(i) * cy.denom_scalar(j))
        }))
    }
}

/// Rows of a Stirling matrix up to their last nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingJson {
    pub label: String,
    pub excess: i64,
    pub n_max: usize,
    pub rows: Vec<Vec<String>>,
}

impl StirlingJson {
    pub fn from_stirling(s: &StirlingMatrix) -> Self {
        let rows = (0..=s.n_max())
            .map(|n| {
                let end = s.last_nonzero(n).map_or(0, |k| k + 1);
                strings(&s.matrix().row(n)[..end])
            })
            .collect();
        StirlingJson { label: s.label().to_string(), excess: s.excess(), n_max: s.n_max(), rows }
    }
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("artifact types serialize")
}

pub fn from_str<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{frac, int};
    use crate::riordan::riordan_matrix;

    fn stirling_pair() -> RiordanPair {
        let phi = Series::exp_x(Convention::Egf, 6).sub(&Series::one(Convention::Egf, 6)).unwrap();
        RiordanPair::new(Series::one(Convention::Egf, 6), phi).unwrap()
    }

    #[test]
    fn matrix_round_trip() {
        let m = riordan_matrix(&stirling_pair(), 6).unwrap();
        let j = MatrixJson::from_matrix(&m);
        assert_eq!(j.class, MatrixClass::Unipotent);
        assert_eq!(j.entries[3], vec!["0", "1", "3", "1"]);
        let text = to_string(&j);
        assert!(text.contains("\"class\": \"UT\""));
        let back: MatrixJson = from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);

        let mut wrong = j.clone();
        wrong.class = MatrixClass::Nilpotent;
        assert!(matches!(wrong.to_matrix(), Err(Error::WrongClass { .. })));
        let mut ragged = j;
        ragged.entries[2].pop();
        assert!(ragged.to_matrix().is_err());
    }

    #[test]
    fn pair_and_series_round_trip() {
        let p = stirling_pair();
        let j = PairJson::from_pair(&p);
        assert_eq!(j.phi, vec!["0", "1", "1", "1", "1", "1", "1"]);
        let back: PairJson = from_str(&to_string(&j)).unwrap();
        assert_eq!(back.to_pair().unwrap(), p);

        let s = Series::from_coeffs(Convention::Ogf, vec![frac(1, 2), int(-3), int(0)]);
        let j = SeriesJson::from_series(&s);
        assert_eq!(j.coeffs, vec!["1/2", "-3", "0"]);
        assert_eq!(from_str::<SeriesJson>(&to_string(&j)).unwrap().to_series().unwrap(), s);
    }

    #[test]
    fn bivar_round_trip() {
        let b = BivarSeries::from_plain_fn((Convention::Egf, Convention::Ogf), 3, 2, |i, j| frac(i as i64 + 1, j as i64 + 2));
        let j = BivarJson::from_bivar(&b);
        assert_eq!(from_str::<BivarJson>(&to_string(&j)).unwrap().to_bivar().unwrap(), b);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(from_str::<MatrixJson>("{\"size\": 1"), Err(Error::Parse { .. })));
        let bad = "{\"size\":1,\"entries\":[[\"1/0\"]],\"class\":\"UT\"}";
        assert!(from_str::<MatrixJson>(bad).unwrap().to_matrix().is_err());
    }
}
