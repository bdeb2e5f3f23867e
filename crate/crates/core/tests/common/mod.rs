//! Strategies shared by the property tests.
#![allow(dead_code)]

use normord::coeff::{frac, int};
use normord::{BosonWord, Convention, Letter, ParamPoly, RiordanPair, Scalar, Series, TriMatrix};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=5).prop_map(|(p, q)| frac(p, q))
}

pub fn param_poly(max_len: usize) -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(ParamPoly::new)
}

pub fn convention() -> impl Strategy<Value = Convention> {
    prop_oneof![Just(Convention::Ogf), Just(Convention::Egf), Just(Convention::Degf)]
}

/// Series with the given valuation at least `min_val`.
pub fn series(conv: Convention, order: usize, min_val: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(rational(), order + 1).prop_map(move |mut c| {
        for a in c.iter_mut().take(min_val) {
            *a = int(0);
        }
        Series::from_coeffs(conv, c)
    })
}

/// Valuation exactly one.
pub fn substitution(conv: Convention, order: usize) -> impl Strategy<Value = Series> {
    (series(conv, order, 2), rational().prop_filter("nonzero", |q| *q != int(0))).prop_map(move |(s, lin)| {
        let mut c = s.coeffs();
        c[1] = lin;
        Series::from_coeffs(conv, c)
    })
}

pub fn word(max_len: usize) -> impl Strategy<Value = BosonWord> {
    prop::collection::vec(prop::bool::ANY, 0..=max_len)
        .prop_map(|bits| BosonWord::new(bits.into_iter().map(|b| if b { Letter::Create } else { Letter::Annihilate }).collect()))
}

pub fn tri(size: usize) -> impl Strategy<Value = TriMatrix> {
    prop::collection::vec(rational(), size * (size + 1) / 2).prop_map(move |v| {
        let mut it = v.into_iter();
        let rows = (0..size).map(|i| (0..=i).map(|_| it.next().unwrap()).collect()).collect();
        TriMatrix::from_rows(rows).unwrap()
    })
}

pub fn unipotent(size: usize) -> impl Strategy<Value = TriMatrix> {
    tri(size).prop_map(move |m| TriMatrix::from_fn(size, |i, j| if i == j { int(1) } else { m.get(i, j) }))
}

/// Pair with `g(0) != 0` and `phi` of valuation one.
pub fn pair(conv: Convention, order: usize) -> impl Strategy<Value = RiordanPair> {
    (series(conv, order, 0), rational().prop_filter("nonzero", |q| *q != int(0)), substitution(conv, order)).prop_map(
        move |(g, g0, phi)| {
            let mut c = g.coeffs();
            c[0] = g0;
            RiordanPair::new(Series::from_coeffs(conv, c), phi).unwrap()
        },
    )
}

pub fn unipotent_pair(conv: Convention, order: usize) -> impl Strategy<Value = RiordanPair> {
    pair(conv, order).prop_map(move |p| {
        let mut g = p.g().coeffs();
        let mut phi = p.phi().coeffs();
        g[0] = int(1);
        phi[1] = int(1);
        RiordanPair::new(Series::from_coeffs(conv, g), Series::from_coeffs(conv, phi)).unwrap()
    })
}
