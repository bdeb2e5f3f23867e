//! Exact computer algebra for boson normal ordering.
//!
//! The crate normal-orders words and linear combinations in the Weyl algebra
//! generated by `a`, `a+` with `[a, a+] = 1`, reads off generalized Stirling
//! matrices, and connects them with substitution-with-prefunction (Riordan)
//! matrices and formal one-parameter groups of vector fields on the line.
//!
//! Everything is exact: coefficients are arbitrary precision rationals,
//! infinite objects are represented by explicit truncations.

#![allow(clippy::needless_range_loop)]

pub mod bivar;
pub mod boson;
pub mod coeff;
pub mod error;
pub mod flows;
pub mod json;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod riordan;
pub mod series;
pub mod triangular;
pub mod verify;

pub use bivar::BivarSeries;
pub use boson::{BosonWord, Letter, NormalForm, StirlingMatrix};
pub use coeff::{Coeff, Scalar};
pub use error::{Error, Result};
pub use flows::{Flow, HomogeneousOperator};
pub use matrix::Matrix;
pub use poly::{ParamPoly, Poly};
pub use riordan::RiordanPair;
pub use series::{Convention, Series};
pub use triangular::{MatrixClass, TriMatrix};
