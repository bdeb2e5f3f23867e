mod common;

use common::*;
use normord::coeff::{frac, int};
use normord::flows::{
    characteristic_correspondence, check_group_law, exp_oracle, formal_flow, group_action, monomial_field,
    operator_exp, prefunction_group_matrix, substitution_factor_closed,
};
use normord::riordan::is_sheffer;
use normord::{Convention, HomogeneousOperator, Scalar, Series};
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("nonzero", |q| *q != int(0))
}

/// Polynomial field of degree at most 3 with the given valuation floor.
fn field(min_val: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(rational(), 4).prop_map(move |mut c| {
        for a in c.iter_mut().take(min_val) {
            *a = int(0);
        }
        Series::from_coeffs(Convention::Ogf, c)
    })
}

/// `c (a+)^alpha a (a+)^beta` with `alpha + beta = r <= 4` and `beta <= 2`.
fn single_word_op() -> impl Strategy<Value = HomogeneousOperator> {
    (0usize..=4, 0usize..=2, nonzero())
        .prop_filter("beta <= r", |(r, p, _)| p <= r)
        .prop_map(|(r, p, c)| HomogeneousOperator::new([((r - p, p), c)]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flows_compose_additively(v in field(1)) {
        let v = v.pad_polynomial(6);
        prop_assert_eq!(check_group_law(&v, 6, 4).unwrap(), None);
    }

    #[test]
    fn flows_with_drift_compose_additively(v in field(0)) {
        let v = v.pad_polynomial(13);
        prop_assert_eq!(check_group_law(&v, 5, 4).unwrap(), None);
    }

    #[test]
    fn flow_is_tangent_to_its_field(v in field(0)) {
        let v = v.pad_polynomial(10);
        let flow = formal_flow(&v, 6, 4).unwrap();
        prop_assert_eq!(flow.tangent(), v.truncate(6).unwrap());
        for i in 0..=6 {
            prop_assert_eq!(flow.s().plain(i, 0), &int((i == 1) as i64));
        }
    }

    #[test]
    fn group_action_matches_matrix_exponential(op in single_word_op(), m in 0usize..=8) {
        let (nx, nl) = (8, 4);
        let mut mono = vec![int(0); m + 1];
        mono[m] = int(1);
        let f = Series::from_plain(Convention::Ogf, mono).pad_polynomial(nx + nl + 1);
        let oracle = exp_oracle(&op.to_normal_form(), m, nx, nl).unwrap();
        let by_factoring = operator_exp(op.terms(), &f, nx, nl).unwrap();
        prop_assert_eq!(by_factoring.first_difference(&oracle), None, "{} on x^{}", op, m);
        if op.excess() >= 0 {
            let closed = group_action(&op, &f, nx, nl).unwrap();
            prop_assert_eq!(closed.first_difference(&oracle), None, "{} on x^{}", op, m);
        }
    }

    #[test]
    fn prefunction_matrices_form_a_group(
        r in 2usize..=4,
        p in 0usize..=2,
        l1 in rational(),
        l2 in rational(),
    ) {
        let n = 6;
        let m = |l: &Scalar| prefunction_group_matrix(r, p, l, n).unwrap();
        prop_assert_eq!(m(&l1).mul(&m(&l2)).unwrap(), m(&(&l1 + &l2)));
        prop_assert!(is_sheffer(&m(&l1), Convention::Ogf).unwrap().holds());
    }

    #[test]
    fn correspondence_for_nonnegative_excess(
        (alpha, beta) in (1usize..=3, 0usize..=2),
        c in nonzero(),
    ) {
        let op = HomogeneousOperator::new([((alpha, beta), c)]).unwrap();
        let report = characteristic_correspondence(&op, 5).unwrap();
        prop_assert!(report.passed(), "{}: {:?} {:?}", op, report.sheffer_failure, report.mismatches.first());
    }
}

#[test]
fn closed_factors_match_integration() {
    for r in 0..=4 {
        let (nx, nl) = (7, 5);
        let closed = substitution_factor_closed(r, nx, nl);
        let formal = formal_flow(&monomial_field(r, nx + nl), nx, nl).unwrap();
        assert_eq!(closed.s().first_difference(formal.s()), None, "x^{r} d/dx");
    }
}

#[test]
fn prefunction_matrix_at_zero_is_identity() {
    let id = prefunction_group_matrix(3, 1, &int(0), 5).unwrap();
    assert_eq!(id, normord::TriMatrix::identity(6));
    assert!(prefunction_group_matrix(1, 0, &frac(1, 2), 5).is_err());
}
