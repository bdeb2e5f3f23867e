//! Boson words, normal ordering and generalized Stirling matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::coeff::{binomial, factorial, is_negative, to_integer, Coeff, Scalar};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::triangular::TriMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `a+`, multiplication by `x` on monomials.
    Create,
    /// `a`, differentiation.
    Annihilate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BosonWord {
    letters: Vec<Letter>,
}

impl BosonWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BosonWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `(a+)^alpha a (a+)^beta`.
    pub fn single_annihilator(alpha: usize, beta: usize) -> Self {
        let mut letters = vec![Letter::Create; alpha];
        letters.push(Letter::Annihilate);
        letters.extend(std::iter::repeat_n(Letter::Create, beta));
        BosonWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of creators `|w|_{a+}`.
    pub fn creations(&self) -> usize {
        self.letters.iter().filter(|&&l| l == Letter::Create).count()
    }

    /// Number of annihilators `|w|_a`.
    pub fn annihilations(&self) -> usize {
        self.letters.len() - self.creations()
    }

    pub fn excess(&self) -> i64 {
        self.creations() as i64 - self.annihilations() as i64
    }

    pub fn ends_with_annihilator(&self) -> bool {
        self.letters.last() == Some(&Letter::Annihilate)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BosonWord { letters }
    }

    pub fn repeat(&self, n: usize) -> Self {
        BosonWord { letters: self.letters.repeat(n) }
    }
}

impl fmt::Display for BosonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(match l {
                Letter::Create => "a+",
                Letter::Annihilate => "a",
            })?;
        }
        Ok(())
    }
}

/// Finite sum `sum c_{i,j} (a+)^i a^j` with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Scalar::one())
    }

    pub fn monomial(creators: usize, annihilators: usize, c: Scalar) -> Self {
        let mut nf = Self::zero();
        nf.add_term(creators, annihilators, c);
        nf
    }

    pub fn letter(l: Letter) -> Self {
        match l {
            Letter::Create => Self::monomial(1, 0, Scalar::one()),
            Letter::Annihilate => Self::monomial(0, 1, Scalar::one()),
        }
    }

    fn add_term(&mut self, i: usize, j: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Terms keyed by `(creators, annihilators)`, sorted.
    pub fn terms(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, creators: usize, annihilators: usize) -> Scalar {
        self.terms.get(&(creators, annihilators)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Scalar) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c * q);
        }
        out
    }

    /// Normal-ordered product, using
    /// `a^j (a+)^k = sum_t C(j,t) C(k,t) t! (a+)^(k-t) a^(j-t)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c1) in &self.terms {
            for (&(k, l), c2) in &other.terms {
                let c = c1 * c2;
                for t in 0..=j.min(k) {
                    let w = binomial(j, t) * binomial(k, t) * factorial(t);
                    out.add_term(i + k - t, j + l - t, &c * Scalar::from_integer(w));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Weight `i - j` shared by every term, if any.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut weights = self.terms.keys().map(|&(i, j)| i as i64 - j as i64);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Applies the operator to a polynomial given by its coefficients, with
    /// `a+` acting as multiplication by `x` and `a` as `d/dx`.
    pub fn apply(&self, poly: &[Scalar]) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = Vec::new();
        for (&(i, j), c) in &self.terms {
            for (m, p) in poly.iter().enumerate() {
                if p.is_zero() || m < j {
                    continue;
                }
                // x^i (d/dx)^j x^m = m!/(m-j)! x^(m-j+i)
                let falling = factorial(m) / factorial(m - j);
                let deg = m - j + i;
                if out.len() <= deg {
                    out.resize(deg + 1, Scalar::zero());
                }
                out[deg] += c * p * Scalar::from_integer(falling);
            }
        }
        while out.last().is_some_and(Coeff::is_zero) {
            out.pop();
        }
        out
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let c = match (n, is_negative(c)) {
                (0, _) => c.clone(),
                (_, true) => {
                    f.write_str(" - ")?;
                    -c
                }
                (_, false) => {
                    f.write_str(" + ")?;
                    c.clone()
                }
            };
            let mut parts = Vec::new();
            if !c.is_one() || (i == 0 && j == 0) {
                parts.push(format!("{c}"));
            }
            match i {
                0 => {}
                1 => parts.push("a+".into()),
                _ => parts.push(format!("(a+)^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("a".into()),
                _ => parts.push(format!("a^{j}")),
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

/// Normal form of a word, by left-to-right normal-ordered multiplication.
pub fn normalize(word: &BosonWord) -> NormalForm {
    word.letters()
        .iter()
        .fold(NormalForm::one(), |acc, &l| acc.mul(&NormalForm::letter(l)))
}

/// Normal form of `word^n`.
pub fn normalize_power(word: &BosonWord, n: usize) -> NormalForm {
    normalize(word).pow(n)
}

/// Slow reference: rewrites `a a+ -> a+ a + 1` on linear combinations of
/// words until no `a a+` factor is left. Exponential in the word length.
pub fn normalize_by_rewriting(word: &BosonWord) -> NormalForm {
    let mut pending: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
    pending.insert(word.letters().to_vec(), Scalar::one());
    let mut out = NormalForm::zero();
    while let Some((w, c)) = pending.pop_first() {
        let pos = w
            .windows(2)
            .position(|p| p == [Letter::Annihilate, Letter::Create]);
        match pos {
            None => {
                let i = w.iter().filter(|&&l| l == Letter::Create).count();
                out.add_term(i, w.len() - i, c);
            }
            Some(p) => {
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                let mut dropped = w.clone();
                dropped.drain(p..p + 2);
                for v in [swapped, dropped] {
                    let slot = pending.entry(v).or_insert_with(Scalar::zero);
                    *slot += &c;
                }
            }
        }
    }
    out
}

/// `S_w(n, k)` for `n = 0..=n_max`, stored with rectangular rows.
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingMatrix {
    label: String,
    excess: i64,
    entries: Matrix<Scalar>,
}

impl StirlingMatrix {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn excess(&self) -> i64 {
        self.excess
    }

    pub fn n_max(&self) -> usize {
        self.entries.rows() - 1
    }

    pub fn width(&self) -> usize {
        self.entries.cols()
    }

    pub fn get(&self, n: usize, k: usize) -> Scalar {
        if k < self.entries.cols() {
            self.entries.get(n, k).clone()
        } else {
            Scalar::zero()
        }
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.entries
    }

    /// Entries as integers; fails if any entry is fractional.
    pub fn integer_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        self.entries
            .to_rows()
            .iter()
            .enumerate()
            .map(|(n, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, c)| {
                        to_integer(c).ok_or_else(|| Error::Internal(format!("S({n},{k}) = {c} is not an integer")))
                    })
                    .collect()
            })
            .collect()
    }

    /// Index of the last nonzero entry of row `n`.
    pub fn last_nonzero(&self, n: usize) -> Option<usize> {
        self.entries.row(n).iter().rposition(|c| !c.is_zero())
    }

    /// Square lower-triangular view when no entry lies above the diagonal.
    pub fn to_tri(&self) -> Result<TriMatrix<Scalar>> {
        let n = self.entries.rows();
        let square = Matrix::from_fn(n, self.entries.cols().max(n), |i, j| self.get(i, j));
        square.to_tri()
    }

    pub fn is_unitriangular(&self) -> bool {
        self.to_tri().is_ok_and(|t| t.is_unipotent())
    }
}

/// Reads `S(n, k)` off `N(base^n)` for an element of fixed weight `excess`.
///
/// For `excess >= 0` the factor `(a+)^(n e)` is split off on the left, for
/// `excess < 0` the factor `a^(n |e|)` on the right.
pub fn stirling_from_element(base: &NormalForm, excess: i64, n_max: usize, label: String) -> Result<StirlingMatrix> {
    let mut rows: Vec<BTreeMap<usize, Scalar>> = Vec::with_capacity(n_max + 1);
    let mut power = NormalForm::one();
    for n in 0..=n_max {
        if n > 0 {
            power = power.mul(base);
        }
        let shift = excess.unsigned_abs() as usize * n;
        let mut row = BTreeMap::new();
        for (&(i, j), c) in power.terms() {
            let (k, rest) = if excess >= 0 {
                (j, i.checked_sub(shift).filter(|&r| r == j))
            } else {
                (i, j.checked_sub(shift).filter(|&r| r == i))
            };
            if rest.is_none() {
                return Err(Error::Internal(format!(
                    "term (a+)^{i} a^{j} of power {n} does not factor with excess {excess}"
                )));
            }
            row.insert(k, c.clone());
        }
        rows.push(row);
    }
    let width = rows.iter().filter_map(|r| r.keys().next_back()).max().map_or(1, |&k| k + 1);
    let entries = Matrix::from_fn(n_max + 1, width, |n, k| rows[n].get(&k).cloned().unwrap_or_else(Scalar::zero));
    Ok(StirlingMatrix { label, excess, entries })
}

/// Generalized Stirling matrix of a word; all entries are checked to be integers.
pub fn stirling_matrix(word: &BosonWord, n_max: usize) -> Result<StirlingMatrix> {
    let m = stirling_from_element(&normalize(word), word.excess(), n_max, word.to_string())?;
    m.integer_rows()?;
    Ok(m)
}

/// Matrix of the operator on monomials `x^0..x^n_max`: entry `(i, m)` is the
/// coefficient of `x^i` in `nf(x^m)`. Output degrees beyond `n_max` are cut.
pub fn apply_to_monomials(nf: &NormalForm, n_max: usize) -> Matrix<Scalar> {
    let mut out = Matrix::zero(n_max + 1, n_max + 1);
    for m in 0..=n_max {
        let mut mono = vec![Scalar::zero(); m + 1];
        mono[m] = Scalar::one();
        for (i, c) in nf.apply(&mono).into_iter().enumerate().take(n_max + 1) {
            out.set(i, m, c);
        }
    }
    out
}

/// Largest degree increase among the terms, `max(i - j, 0)`.
pub fn max_raise(nf: &NormalForm) -> usize {
    nf.terms().keys().map(|&(i, j)| i.saturating_sub(j)).max().unwrap_or(0)
}
