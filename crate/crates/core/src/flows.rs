//! One-parameter groups generated by single-annihilator operators.
//!
//! In the representation `a+ = x`, `a = d/dx`, the operator
//! `(a+)^(r-p) a (a+)^p` is `x^(r-p) d/dx x^p`. Its exponential is a
//! substitution `f -> f(s_lambda)` (for `p = 0`) conjugated by `x^p`, which
//! gives `(s_lambda / x)^p f(s_lambda)`. All series here are bivariate in
//! `(x, lambda)` and truncated in both variables; identities are checked
//! coefficient by coefficient against the exponential of the operator matrix.

use std::collections::BTreeMap;
use std::fmt;

use crate::bivar::BivarSeries;
use crate::boson::{apply_to_monomials, max_raise, normalize, stirling_from_element, BosonWord, NormalForm, StirlingMatrix};
use crate::coeff::{binomial, factorial, int, Coeff, Scalar};
use crate::error::{Error, Result};
use crate::poly::ParamPoly;
use crate::riordan::{is_sheffer_rows, riordan_matrix, RiordanPair};
use crate::series::{Convention, Series};
use crate::triangular::TriMatrix;

const OO: (Convention, Convention) = (Convention::Ogf, Convention::Ogf);

/// `sum c_{alpha,beta} (a+)^alpha a (a+)^beta` with `alpha + beta = e + 1` fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousOperator {
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl HomogeneousOperator {
    pub fn new(terms: impl IntoIterator<Item = ((usize, usize), Scalar)>) -> Result<Self> {
        let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (key, c) in terms {
            *map.entry(key).or_insert_with(Scalar::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut weights = map.keys().map(|&(a, b)| (a + b) as i64 - 1);
        let Some(first) = weights.next() else {
            return Err(Error::Unsupported("operator has no terms".into()));
        };
        if let Some(other) = weights.find(|&w| w != first) {
            return Err(Error::MixedWeight(first, other));
        }
        Ok(HomogeneousOperator { terms: map })
    }

    pub fn from_word(word: &BosonWord) -> Result<Self> {
        if word.annihilations() != 1 {
            return Err(Error::NotSingleAnnihilator);
        }
        let alpha = word.letters().iter().take_while(|&&l| l == crate::boson::Letter::Create).count();
        Self::new([((alpha, word.len() - alpha - 1), Scalar::one())])
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.terms
    }

    /// Weight `e`, with `weight(a+) = 1` and `weight(a) = -1`.
    pub fn excess(&self) -> i64 {
        let (a, b) = self.terms.keys().next().expect("nonempty");
        (a + b) as i64 - 1
    }

    /// Number of creators per monomial, `e + 1`.
    pub fn r(&self) -> usize {
        let (a, b) = self.terms.keys().next().expect("nonempty");
        a + b
    }

    /// `(r, p, c)` when the operator is `c (a+)^(r-p) a (a+)^p`.
    pub fn single_word(&self) -> Option<(usize, usize, Scalar)> {
        match self.terms.iter().collect::<Vec<_>>().as_slice() {
            [(&(alpha, beta), c)] => Some((alpha + beta, beta, (*c).clone())),
            _ => None,
        }
    }

    pub fn to_normal_form(&self) -> NormalForm {
        self.terms.iter().fold(NormalForm::zero(), |acc, (&(a, b), c)| {
            acc.add(&normalize(&BosonWord::single_annihilator(a, b)).scale(c))
        })
    }
}

impl fmt::Display for HomogeneousOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (&(a, b), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "{c} ")?;
            }
            write!(f, "{}", BosonWord::single_annihilator(a, b))?;
        }
        Ok(())
    }
}

/// Substitution factor `s_lambda(x)` together with the field it integrates.
#[derive(Clone, Debug, PartialEq)]
pub struct Flow {
    s: BivarSeries,
    field: Series,
}

impl Flow {
    /// Grid of `s_lambda(x)`: index `(i, j)` is the coefficient of `x^i lambda^j`.
    pub fn s(&self) -> &BivarSeries {
        &self.s
    }

    pub fn field(&self) -> &Series {
        &self.field
    }

    /// `d/dlambda s` at `lambda = 0`.
    pub fn tangent(&self) -> Series {
        self.s.column_y(1)
    }
}

fn x_grid(nx: usize, nl: usize) -> BivarSeries {
    BivarSeries::monomial(OO, nx, nl, 1, 0, Scalar::one())
}

/// Integrates `d/dlambda s = v(s)`, `s_0(x) = x`, order by order in `lambda`.
///
/// The field must be known to order `nx` when `v(0) = 0` and to `nx + nl`
/// otherwise (then `s_lambda(0) != 0` and low powers of `x` collect
/// contributions from every power of `v`).
pub fn formal_flow(v: &Series, nx: usize, nl: usize) -> Result<Flow> {
    if nl == 0 {
        return Err(Error::InsufficientOrder { needed: 1, have: 0 });
    }
    let v = v.to_convention(Convention::Ogf);
    let needed = if v.plain(0).is_zero() { nx } else { nx + nl };
    if v.order() < needed {
        return Err(Error::InsufficientOrder { needed, have: v.order() });
    }
    let v = v.truncate(needed)?;
    let mut s = x_grid(nx, nl);
    for j in 0..nl {
        let vs = s.substitute_into(&v)?;
        let inv = Scalar::new(1.into(), (j + 1).into());
        for i in 0..=nx {
            s.set_plain(i, j + 1, vs.plain(i, j) * &inv);
        }
    }
    Ok(Flow { s, field: v })
}

/// `x^r` as a series of the given order.
pub fn monomial_field(r: usize, order: usize) -> Series {
    Series::monomial(Convention::Ogf, order, r, Scalar::one())
}

/// Closed-form substitution factor of `x^r d/dx`:
/// `x + lambda`, `e^lambda x`, or `x (1 - (r-1) lambda x^(r-1))^(-1/(r-1))`.
pub fn substitution_factor_closed(r: usize, nx: usize, nl: usize) -> Flow {
    let field = monomial_field(r, nx + nl);
    let s = match r {
        0 => BivarSeries::from_plain_fn(OO, nx, nl, |i, j| int(((i, j) == (1, 0) || (i, j) == (0, 1)) as i64)),
        1 => BivarSeries::from_plain_fn(OO, nx, nl, |i, j| {
            if i == 1 {
                Scalar::new(1.into(), factorial(j))
            } else {
                Scalar::zero()
            }
        }),
        _ => {
            let e = r - 1;
            let mut base: Vec<ParamPoly> = vec![ParamPoly::zero(); nx + 1];
            base[0] = ParamPoly::one();
            if e <= nx {
                base[e] = ParamPoly::monomial(-Scalar::from_integer(e.into()), 1);
            }
            let f = Series::from_plain(Convention::Ogf, base);
            let exponent = Scalar::new((-1).into(), e.into());
            let p = f.pow(&exponent).expect("constant term is one");
            BivarSeries::from_plain_fn(OO, nx, nl, |i, j| if i == 0 { Scalar::zero() } else { p.plain(i - 1).coeff(j) })
        }
    };
    Flow { s, field }
}

/// `(s / x)^p f(s)` for a flow whose substitution factor vanishes at `x = 0`;
/// `s` must carry one more order in `x` than the result.
fn conjugated_action(s: &BivarSeries, p: usize, f: &Series, nx: usize, nl: usize) -> Result<BivarSeries> {
    let s_trunc = s.truncate(nx, nl)?;
    let fs = s_trunc.substitute_into(&f.to_convention(Convention::Ogf))?;
    if p == 0 {
        return Ok(fs);
    }
    let ratio = s.div_x()?;
    ratio.pow_u32(p as u32).mul(&fs)
}

/// `e^{lambda Omega}[f]` for `Omega = c (a+)^(r-p) a (a+)^p`, using the closed-form
/// substitution factor and the prefactor `(s_lambda(x) / x)^p`.
pub fn group_action(op: &HomogeneousOperator, f: &Series, nx: usize, nl: usize) -> Result<BivarSeries> {
    let (r, p, c) = op
        .single_word()
        .ok_or_else(|| Error::Unsupported("group action needs a single-word operator".into()))?;
    if op.excess() < 0 {
        return Err(Error::NegativeExcess(op.excess()));
    }
    let flow = substitution_factor_closed(r, nx + 1, nl);
    let s = flow.s().scale_y(&c);
    conjugated_action(&s, p, f, nx, nl)
}

/// `e^{lambda u1 d/dx u2}[f] = (1 / u2) e^{lambda u1 u2 d/dx} [u2 f]`.
///
/// `u2` must be a unit (nonzero constant term) or a monomial `c x^p`; in the
/// latter case the prefactor is `(s_lambda / x)^p`. The flow of `u1 u2` is
/// integrated numerically-exactly by [`formal_flow`].
pub fn conjugacy_exp(u1: &Series, u2: &Series, f: &Series, nx: usize, nl: usize) -> Result<BivarSeries> {
    let u1 = u1.to_convention(Convention::Ogf);
    let u2 = u2.to_convention(Convention::Ogf);
    let v = u1.mul(&u2)?;
    if !u2.plain(0).is_zero() {
        let flow = formal_flow(&v, nx, nl)?;
        let s = flow.s();
        let inv_u2 = BivarSeries::from_series_x(&u2.truncate(nx)?, Convention::Ogf, nl).inverse()?;
        let u2_s = s.substitute_into(&u2)?;
        let f_s = s.substitute_into(&f.to_convention(Convention::Ogf))?;
        return inv_u2.mul(&u2_s)?.mul(&f_s);
    }
    let p = u2
        .valuation()
        .ok_or_else(|| Error::NotInvertible("u2 is zero".into()))?;
    if (p + 1..=u2.order()).any(|k| !u2.plain(k).is_zero()) {
        return Err(Error::NotInvertible("u2 must be a unit or a monomial c x^p".into()));
    }
    let flow = formal_flow(&v, nx + 1, nl)?;
    conjugated_action(flow.s(), p, f, nx, nl)
}

/// Writes `sum c (a+)^alpha a (a+)^beta` as `u1 d/dx u2`: when every term has
/// the same `beta = p` this is `u1 = sum c x^alpha`, `u2 = x^p`; when every
/// term has the same `alpha` it is `u1 = x^alpha`, `u2 = sum c x^beta`.
/// Both series are returned at the given order (at least the degree).
pub fn factor_operator(terms: &BTreeMap<(usize, usize), Scalar>, order: usize) -> Result<(Series, Series)> {
    let Some(&(alpha0, beta0)) = terms.keys().next() else {
        return Err(Error::Unsupported("operator has no terms".into()));
    };
    let order = terms.keys().map(|&(a, b)| a.max(b)).max().unwrap_or(0).max(order);
    let poly = |pick: &dyn Fn(usize, usize) -> usize| {
        let mut c = vec![Scalar::zero(); order + 1];
        for (&(a, b), v) in terms {
            c[pick(a, b)] += v;
        }
        Series::from_plain(Convention::Ogf, c)
    };
    if terms.keys().all(|&(_, b)| b == beta0) {
        Ok((poly(&|a, _| a), monomial_field(beta0, order)))
    } else if terms.keys().all(|&(a, _)| a == alpha0) {
        Ok((monomial_field(alpha0, order), poly(&|_, b| b)))
    } else {
        Err(Error::Unsupported("operator is not of the form u1(x) d/dx u2(x) with a monomial factor".into()))
    }
}

/// `e^{lambda Omega}[f]` for a (possibly mixed-weight) single-annihilator
/// operator, through [`factor_operator`] and [`conjugacy_exp`].
pub fn operator_exp(terms: &BTreeMap<(usize, usize), Scalar>, f: &Series, nx: usize, nl: usize) -> Result<BivarSeries> {
    let order = nx + nl + 1;
    let (u1, u2) = factor_operator(terms, order)?;
    let f = if f.order() < order { f.pad_polynomial(order) } else { f.clone() };
    conjugacy_exp(&u1, &u2, &f, nx, nl)
}

/// Column `m` of `exp(lambda H)` for the matrix `H` of `nf` on monomials,
/// as a grid in `(x, lambda)`. The matrix is padded so that rows `0..=nx` are
/// exact up to `lambda^nl`.
pub fn exp_oracle(nf: &NormalForm, m: usize, nx: usize, nl: usize) -> Result<BivarSeries> {
    let size = nx.max(m) + nl * max_raise(nf) + 1;
    let h = apply_to_monomials(nf, size - 1);
    let e = h.exp_lambda(nl)?;
    Ok(BivarSeries::from_plain_fn(OO, nx, nl, |i, j| e.get(i, m).coeff(j)))
}

/// Substitution factor `(x cos lambda + sin lambda) / (cos lambda - x sin lambda)`
/// of the field `1 + x^2`, with `cos` and `sin` expanded as rational series.
pub fn rotation_homography_closed(nx: usize, nl: usize) -> Result<BivarSeries> {
    let cos = Series::from_fn(Convention::Egf, nl, |j| match j % 4 {
        0 => Scalar::one(),
        2 => -Scalar::one(),
        _ => Scalar::zero(),
    });
    let sin = Series::from_fn(Convention::Egf, nl, |j| match j % 4 {
        1 => Scalar::one(),
        3 => -Scalar::one(),
        _ => Scalar::zero(),
    });
    let c = BivarSeries::from_series_y(&cos.to_convention(Convention::Ogf), Convention::Ogf, nx);
    let s = BivarSeries::from_series_y(&sin.to_convention(Convention::Ogf), Convention::Ogf, nx);
    let x = x_grid(nx, nl);
    let num = x.mul(&c)?.add(&s)?;
    let den = c.sub(&x.mul(&s)?)?;
    num.mul(&den.inverse()?)
}

/// Dense grid in `(x, lambda, mu)`.
struct Trivar {
    dims: (usize, usize, usize),
    data: Vec<Scalar>,
}

impl Trivar {
    fn zero(dims: (usize, usize, usize)) -> Self {
        Trivar { dims, data: vec![Scalar::zero(); (dims.0 + 1) * (dims.1 + 1) * (dims.2 + 1)] }
    }

    fn idx(&self, i: usize, a: usize, b: usize) -> usize {
        (i * (self.dims.1 + 1) + a) * (self.dims.2 + 1) + b
    }

    fn get(&self, i: usize, a: usize, b: usize) -> &Scalar {
        &self.data[self.idx(i, a, b)]
    }

    fn add_at(&mut self, i: usize, a: usize, b: usize, c: &Scalar) {
        let k = self.idx(i, a, b);
        self.data[k] += c;
    }

    fn mul(&self, other: &Trivar) -> Trivar {
        let (nx, na, nb) = self.dims;
        let mut out = Trivar::zero(self.dims);
        for i1 in 0..=nx {
            for a1 in 0..=na {
                for b1 in 0..=nb {
                    let c1 = self.get(i1, a1, b1);
                    if c1.is_zero() {
                        continue;
                    }
                    for i2 in 0..=nx - i1 {
                        for a2 in 0..=na - a1 {
                            for b2 in 0..=nb - b1 {
                                let c2 = other.get(i2, a2, b2);
                                if !c2.is_zero() {
                                    out.add_at(i1 + i2, a1 + a2, b1 + b2, &(c1 * c2));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Checks `s_lambda(s_mu(x)) = s_{lambda + mu}(x)` in `Q[[x, lambda, mu]]` for
/// all coefficients `x^i lambda^a mu^b` with `i <= nx`, `a + b <= nl`.
/// Returns the first failing `(i, a, b)`.
pub fn check_group_law(v: &Series, nx: usize, nl: usize) -> Result<Option<(usize, usize, usize)>> {
    let inner = formal_flow(v, nx, nl)?;
    let inner_s = inner.s();
    let divisible = (0..=nl).all(|j| inner_s.plain(0, j).is_zero());
    let outer_nx = if divisible { nx } else { nx + nl };
    let outer = formal_flow(v, outer_nx, nl)?;
    Ok(composition_law_witness(inner_s, outer.s(), nx, nl))
}

/// Compares `outer(inner(x, mu), lambda)` with `inner(x, lambda + mu)`. The
/// outer grid must reach `x^nx` (or `x^(nx + nl)` when `inner(0, mu) != 0`).
fn composition_law_witness(
    inner_s: &BivarSeries,
    outer_s: &BivarSeries,
    nx: usize,
    nl: usize,
) -> Option<(usize, usize, usize)> {
    let outer_nx = outer_s.nx();
    let dims = (nx, nl, nl);

    let mut y = Trivar::zero(dims);
    for i in 0..=nx {
        for b in 0..=nl {
            y.add_at(i, 0, b, inner_s.plain(i, b));
        }
    }
    let lambda_poly = |k: usize| {
        let mut t = Trivar::zero(dims);
        for a in 0..=nl {
            t.add_at(0, a, 0, outer_s.plain(k, a));
        }
        t
    };
    let mut lhs = lambda_poly(outer_nx);
    for k in (0..outer_nx).rev() {
        lhs = lhs.mul(&y);
        let low = lambda_poly(k);
        for (d, c) in lhs.data.iter_mut().zip(&low.data) {
            *d += c;
        }
    }

    for i in 0..=nx {
        for a in 0..=nl {
            for b in 0..=nl - a {
                let w = Scalar::from_integer(binomial(a + b, a));
                let rhs = inner_s.plain(i, a + b) * w;
                if *lhs.get(i, a, b) != rhs {
                    return Some((i, a, b));
                }
            }
        }
    }
    None
}

/// Matrix (ordinary monomial basis, rows and columns `0..=n_max`) of
/// `f -> (s_lambda / x)^p f(s_lambda)` at a rational `lambda`, for `r >= 2`
/// where every coefficient of `s_lambda` is a polynomial in `lambda`.
pub fn prefunction_group_matrix(r: usize, p: usize, lambda: &Scalar, n_max: usize) -> Result<TriMatrix> {
    if r < 2 {
        return Err(Error::Unsupported("coefficients are transcendental in lambda for r < 2".into()));
    }
    if p > r {
        return Err(Error::Unsupported(format!("p = {p} exceeds r = {r}")));
    }
    // coefficient of x^i in s has lambda-degree at most (i - 1) / (r - 1) <= n_max
    let nl = n_max + 1;
    let flow = substitution_factor_closed(r, n_max + 1, nl);
    let eval = |b: &BivarSeries| -> Series {
        Series::from_plain(Convention::Ogf, (0..=n_max).map(|i| b.row_x(i).eval(lambda)).collect())
    };
    let phi = eval(&flow.s().truncate(n_max, nl)?);
    let g = eval(&flow.s().div_x()?.pow_u32(p as u32));
    riordan_matrix(&RiordanPair::new(g, phi)?, n_max)
}

/// Result of matching normal-ordering coefficients with the one-parameter group.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub stirling: StirlingMatrix,
    pub pair: Option<RiordanPair>,
    /// Why the Sheffer recovery failed, when it did.
    pub sheffer_failure: Option<String>,
    /// Coefficients compared between the reconstructed group and the oracle.
    pub checked: usize,
    /// `(m, i, j)`: monomial `x^m`, coefficient `x^i lambda^j`.
    pub mismatches: Vec<(usize, usize, usize)>,
}

impl Correspondence {
    pub fn passed(&self) -> bool {
        self.sheffer_failure.is_none() && self.mismatches.is_empty() && self.checked > 0
    }
}

/// Reconstructs `U_lambda[f](x) = g(lambda x^e) f(x (1 + phi(lambda x^e)))` from
/// the characteristic series of the normal-ordering coefficients and compares
/// it, on monomials `x^0..x^n_max`, with `exp(lambda Omega)` up to `lambda^n_max`.
pub fn characteristic_correspondence(op: &HomogeneousOperator, n_max: usize) -> Result<Correspondence> {
    let e = op.excess();
    if e < 0 {
        return Err(Error::NegativeExcess(e));
    }
    let e = e as usize;
    let nf = op.to_normal_form();
    let stirling = stirling_from_element(&nf, e as i64, n_max, op.to_string())?;
    let report = match is_sheffer_rows(&stirling.matrix().to_rows(), Convention::Egf) {
        Ok(r) => r,
        Err(err) => {
            return Ok(Correspondence {
                stirling,
                pair: None,
                sheffer_failure: Some(err.to_string()),
                checked: 0,
                mismatches: Vec::new(),
            })
        }
    };
    if let Some((k, n)) = report.violation {
        return Ok(Correspondence {
            stirling,
            pair: Some(report.pair),
            sheffer_failure: Some(format!("column {k} differs from g phi^k / k! at row {n}")),
            checked: 0,
            mismatches: Vec::new(),
        });
    }
    let pair = report.pair;
    let (nx, nl) = (n_max + e * n_max, n_max);
    let g_at = BivarSeries::from_series_at_monomial(pair.g(), e, OO, nx, nl)?;
    let phi_at = BivarSeries::from_series_at_monomial(pair.phi(), e, OO, nx, nl)?;
    let subst = x_grid(nx, nl).mul(&BivarSeries::one(OO, nx, nl).add(&phi_at)?)?;
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for m in 0..=n_max {
        let reconstructed = g_at.mul(&subst.pow_u32(m as u32))?;
        let oracle = exp_oracle(&nf, m, nx, nl)?;
        checked += (nx + 1) * (nl + 1);
        for i in 0..=nx {
            for j in 0..=nl {
                if reconstructed.plain(i, j) != oracle.plain(i, j) {
                    mismatches.push((m, i, j));
                }
            }
        }
    }
    Ok(Correspondence { stirling, pair: Some(pair), sheffer_failure: None, checked, mismatches })
}
