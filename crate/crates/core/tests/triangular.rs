mod common;

use common::*;
use normord::coeff::int;
use normord::triangular::first_difference;
use normord::{Coeff, ParamPoly, TriMatrix};
use proptest::prelude::*;

fn strictly_lower(m: &TriMatrix) -> TriMatrix {
    TriMatrix::from_fn(m.size(), |i, j| if i == j { int(0) } else { m.get(i, j) })
}

fn invertible(size: usize) -> impl Strategy<Value = TriMatrix> {
    tri(size).prop_filter("nonzero diagonal", |m| m.diag().iter().all(|d| !d.is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncation_commutes_with_products(a in tri(7), b in tri(7), n in 0usize..7) {
        let lhs = a.mul(&b).unwrap().truncate(n).unwrap();
        let rhs = a.truncate(n).unwrap().mul(&b.truncate(n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_commutes_with_exp_log_power(m in unipotent(7), n in 0usize..7) {
        let small = m.truncate(n).unwrap();
        prop_assert_eq!(m.mat_log().unwrap().truncate(n).unwrap(), small.mat_log().unwrap());
        let h = strictly_lower(&m);
        prop_assert_eq!(h.mat_exp().unwrap().truncate(n).unwrap(), h.truncate(n).unwrap().mat_exp().unwrap());
        prop_assert_eq!(m.mat_power().unwrap().truncate(n).unwrap(), small.mat_power().unwrap());
    }

    #[test]
    fn exp_and_log_are_inverse(m in unipotent(7)) {
        prop_assert_eq!(m.mat_log().unwrap().mat_exp().unwrap(), m.clone());
        let h = strictly_lower(&m);
        prop_assert_eq!(h.mat_exp().unwrap().mat_log().unwrap(), h);
    }

    #[test]
    fn power_degrees_are_bounded(m in unipotent(8)) {
        let p = m.mat_power().unwrap();
        prop_assert_eq!(p.degree_bound_violation(), None);
        prop_assert_eq!(p, m.mat_power_via_log().unwrap());
    }

    #[test]
    fn power_specializes_to_integer_powers(m in unipotent(6), e in -3i64..=5) {
        prop_assert_eq!(m.mat_power_at(&int(e)).unwrap(), m.pow_int(e).unwrap());
    }

    #[test]
    fn power_is_a_group_law(m in unipotent(6)) {
        prop_assert_eq!(m.power_group_law_violation().unwrap(), None);
    }

    #[test]
    fn conjugating_by_a_diagonal_keeps_unipotence(u in unipotent(6), d in invertible(6)) {
        let dd = TriMatrix::diagonal(d.diag());
        let c = dd.mul(&u).unwrap().mul(&dd.inverse().unwrap()).unwrap();
        prop_assert!(c.is_unipotent());
    }

    #[test]
    fn diagonal_times_unipotent(m in invertible(6)) {
        let (d, u) = m.decompose().unwrap();
        prop_assert!(u.is_unipotent());
        prop_assert_eq!(first_difference(&d.mul(&u).unwrap(), &m), None);
        prop_assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), TriMatrix::identity(6));
    }
}

#[test]
fn pascal_powers() {
    // P^t has entries C(n, k) t^(n-k)
    let pascal = TriMatrix::from_fn(6, |i, j| normord::Scalar::from_integer(normord::coeff::binomial(i, j)));
    let p = pascal.mat_power().unwrap();
    for i in 0..6 {
        for j in 0..=i {
            let expected = ParamPoly::monomial(pascal.get(i, j), i - j);
            assert_eq!(p.get(i, j), expected, "({i}, {j})");
        }
    }
}

#[test]
fn wrong_classes_are_rejected() {
    let m = TriMatrix::from_fn(3, |i, j| int((i + j + 1) as i64));
    assert!(m.mat_log().is_err());
    assert!(m.mat_exp().is_err());
    assert!(m.mat_power().is_err());
    assert!(TriMatrix::<normord::Scalar>::identity(3).truncate(3).is_err());
}
