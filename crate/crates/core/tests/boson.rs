mod common;

use common::*;
use normord::boson::{apply_to_monomials, normalize, normalize_by_rewriting, normalize_power, stirling_matrix};
use normord::coeff::int;
use normord::parse::{parse_word, Expression};
use normord::{BosonWord, Letter, Matrix, NormalForm};
use proptest::prelude::*;

fn letter_matrix(l: Letter, size: usize) -> Matrix {
    apply_to_monomials(&NormalForm::letter(l), size)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normal_ordering_is_multiplicative(u in word(6), v in word(6)) {
        prop_assert_eq!(normalize(&u.concat(&v)), normalize(&u).mul(&normalize(&v)));
    }

    #[test]
    fn agrees_with_rewriting(w in word(9)) {
        prop_assert_eq!(normalize(&w), normalize_by_rewriting(&w));
    }

    #[test]
    fn action_on_polynomials_is_faithful(w in word(7), n in 0usize..=6) {
        // Padding keeps every raised degree inside the truncation.
        let big = n + w.len();
        let mut product = Matrix::identity(big + 1);
        for &l in w.letters() {
            product = product.mul(&letter_matrix(l, big)).unwrap();
        }
        let direct = apply_to_monomials(&normalize(&w), big);
        prop_assert_eq!(product.block(n + 1, n + 1).unwrap(), direct.block(n + 1, n + 1).unwrap());
    }

    #[test]
    fn weight_is_the_excess(w in word(8), n in 1usize..=3) {
        let nf = normalize_power(&w, n);
        for &(i, j) in nf.terms().keys() {
            prop_assert_eq!(i as i64 - j as i64, n as i64 * w.excess());
        }
    }

    #[test]
    fn leading_term_and_first_column(w in word(6).prop_filter("nonempty", |w| !w.is_empty())) {
        let s = stirling_matrix(&w, 5).unwrap();
        // top term: every creator moved left, coefficient one
        let top = if w.excess() >= 0 { w.annihilations() } else { w.creations() };
        prop_assert_eq!(s.get(0, 0), int(1));
        for n in 1..=5 {
            prop_assert_eq!(s.last_nonzero(n), Some(n * top));
            prop_assert_eq!(s.get(n, n * top), int(1));
            let closes = if w.excess() >= 0 { w.ends_with_annihilator() } else { w.letters()[0] == Letter::Create };
            if closes {
                prop_assert_eq!(s.get(n, 0), int(0));
            }
        }
    }

    #[test]
    fn words_survive_display(w in word(10)) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn normal_forms_survive_display(w in word(7), c in rational()) {
        let nf = normalize(&w).scale(&c);
        prop_assert_eq!(Expression::parse(&nf.to_string()).unwrap().to_normal_form(), nf);
    }
}

#[test]
fn stirling_recurrence_for_number_operator() {
    let w = BosonWord::single_annihilator(1, 0);
    let s = stirling_matrix(&w, 12).unwrap();
    for n in 0..12 {
        for k in 1..=n + 1 {
            let rhs = int(k as i64) * s.get(n, k) + s.get(n, k - 1);
            assert_eq!(s.get(n + 1, k), rhs, "S({}, {k})", n + 1);
        }
    }
}

#[test]
fn bell_numbers_as_row_sums() {
    let s = stirling_matrix(&BosonWord::single_annihilator(1, 0), 10).unwrap();
    let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
    for (n, b) in bell.iter().enumerate() {
        let sum = (0..=n).fold(int(0), |acc, k| acc + s.get(n, k));
        assert_eq!(sum, int(*b));
    }
}
