mod common;

use common::*;
use normord::coeff::{frac, int};
use normord::riordan::{bivariate_char_series, is_sheffer, recover_pair, riordan_compose, riordan_matrix};
use normord::{Convention, Scalar, Series};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn recovery_inverts_the_matrix(
        (conv, p) in convention().prop_flat_map(|c| (Just(c), pair(c, 8))),
        n in 1usize..=8,
    ) {
        let m = riordan_matrix(&p, n).unwrap();
        prop_assert_eq!(recover_pair(&m, conv).unwrap(), p.truncate(n).unwrap());
        prop_assert!(is_sheffer(&m, conv).unwrap().holds());
    }

    #[test]
    fn composition_matches_matrix_product(
        (p, q) in convention().prop_flat_map(|c| (pair(c, 10), pair(c, 10))),
        n in 0usize..=10,
    ) {
        let lhs = riordan_matrix(&riordan_compose(&p, &q).unwrap(), n).unwrap();
        let rhs = riordan_matrix(&p, n).unwrap().mul(&riordan_matrix(&q, n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unipotent_pairs_give_unipotent_matrices(p in convention().prop_flat_map(|c| pair(c, 6))) {
        prop_assert_eq!(riordan_matrix(&p, 6).unwrap().is_unipotent(), p.is_unipotent());
    }

    #[test]
    fn powers_stay_in_the_group(
        (conv, p) in convention().prop_flat_map(|c| (Just(c), unipotent_pair(c, 7))),
        t in prop_oneof![Just(int(-2)), Just(frac(1, 2)), Just(int(3)), Just(frac(-2, 3))],
    ) {
        let m = riordan_matrix(&p, 7).unwrap();
        let power = m.mat_power_at(&t).unwrap();
        let report = is_sheffer(&power, conv).unwrap();
        prop_assert!(report.holds(), "violation {:?}", report.violation);
        prop_assert!(report.pair.is_unipotent());
    }

    #[test]
    fn matrix_acts_like_the_substitution(
        (conv, p, f) in convention().prop_flat_map(|c| (Just(c), pair(c, 7), series(c, 7, 0))),
    ) {
        let m = riordan_matrix(&p, 7).unwrap();
        let image = p.apply(&f).unwrap();
        for n in 0..=7 {
            let row = (0..=n).fold(Scalar::from_integer(0.into()), |acc, k| acc + m.get(n, k) * f.coeff(k));
            prop_assert_eq!(row, image.coeff(n), "row {} in {}", n, conv);
        }
    }

    #[test]
    fn characteristic_series_holds_the_entries(p in pair(Convention::Egf, 7)) {
        let m = riordan_matrix(&p, 7).unwrap();
        let grid = bivariate_char_series(&p, 7, 7).unwrap();
        for n in 0..=7 {
            for k in 0..=7 {
                let entry = if k <= n { m.get(n, k) } else { int(0) };
                prop_assert_eq!(grid.coeff(n, k), entry, "({}, {})", n, k);
            }
        }
    }
}

#[test]
fn stirling_pair_and_its_inverse() {
    let em1 = Series::exp_x(Convention::Egf, 6).sub(&Series::one(Convention::Egf, 6)).unwrap();
    let p = normord::RiordanPair::new(Series::one(Convention::Egf, 6), em1).unwrap();
    let m = riordan_matrix(&p, 6).unwrap();
    assert_eq!(m.get(6, 3), int(90));
    // inverse pair (1, log(1 + x)) gives signed first-kind numbers
    let inv = m.inverse().unwrap();
    let q = recover_pair(&inv, Convention::Egf).unwrap();
    assert_eq!(q.phi(), &p.phi().reversion().unwrap());
    assert_eq!(inv.get(4, 2), int(11));
    assert_eq!(inv.get(5, 2), int(-50));
}

#[test]
fn non_sheffer_matrix_is_reported() {
    let mut m = riordan_matrix(&normord::RiordanPair::identity(Convention::Ogf, 4), 4).unwrap();
    m.set(3, 2, int(5));
    let report = is_sheffer(&m, Convention::Ogf).unwrap();
    assert_eq!(report.violation, Some((2, 3)));
    assert!(bivariate_char_series(&normord::RiordanPair::identity(Convention::Ogf, 3), 3, 3).is_err());
}
