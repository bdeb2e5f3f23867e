//! Text syntax for boson expressions and polynomials in `x`.
//!
//! ```text
//! sum    := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' integer)?
//! atom   := 'a' | 'a+' | integer | integer '/' integer | '(' sum ')'
//! ```
//!
//! `a` immediately followed by `+` (or `⁺`) is the creator; a `+` after
//! whitespace is addition, so `a+ a` is a word and `a + a` is a sum. For
//! polynomials the atom `x` replaces the two letters. Errors carry the byte
//! offset of the offending token.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::boson::{normalize, BosonWord, Letter, NormalForm};
use crate::coeff::{Coeff, Scalar};
use crate::error::{Error, Result};
use crate::flows::HomogeneousOperator;
use crate::poly::ParamPoly;

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Slash,
    Create,
    Annihilate,
    X,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, ch)) = chars.next() {
        let tok = match ch {
            c if c.is_whitespace() => continue,
            'a' => match chars.peek() {
                Some(&(_, '+')) | Some(&(_, '⁺')) => {
                    chars.next();
                    Tok::Create
                }
                _ => Tok::Annihilate,
            },
            'x' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let mut end = pos + 1;
                while let Some(&(p, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = p + 1;
                    chars.next();
                }
                Tok::Num(text[pos..end].parse().expect("digits"))
            }
            c => return Err(Error::parse(pos, format!("unknown token '{c}'"))),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

/// What the generic parser builds.
trait Algebra: Clone {
    fn scalar(c: Scalar) -> Self;
    fn atom(tok: &Tok) -> Option<Self>;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::scalar(Scalar::one()), |acc, _| acc.mul(self))
    }
}

/// Noncommutative linear combination of words; words are not normal-ordered.
type Comb = BTreeMap<Vec<Letter>, Scalar>;

impl Algebra for Comb {
    fn scalar(c: Scalar) -> Self {
        let mut m = Comb::new();
        if !c.is_zero() {
            m.insert(Vec::new(), c);
        }
        m
    }

    fn atom(tok: &Tok) -> Option<Self> {
        let l = match tok {
            Tok::Create => Letter::Create,
            Tok::Annihilate => Letter::Annihilate,
            _ => return None,
        };
        Some(Comb::from([(vec![l], Scalar::one())]))
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other {
            *out.entry(w.clone()).or_insert_with(Scalar::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Comb::new();
        for (u, c) in self {
            for (v, d) in other {
                let w: Vec<Letter> = u.iter().chain(v).copied().collect();
                *out.entry(w).or_insert_with(Scalar::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn neg(&self) -> Self {
        self.iter().map(|(w, c)| (w.clone(), -c)).collect()
    }
}

impl Algebra for ParamPoly {
    fn scalar(c: Scalar) -> Self {
        ParamPoly::constant(c)
    }

    fn atom(tok: &Tok) -> Option<Self> {
        (*tok == Tok::X).then(ParamPoly::var)
    }

    fn add(&self, other: &Self) -> Self {
        Coeff::add(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        Coeff::mul(self, other)
    }

    fn neg(&self) -> Self {
        Coeff::neg(self)
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Top-level summands with their byte offsets.
    fn sum<A: Algebra>(&mut self) -> Result<Vec<(usize, A)>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let start = self.offset();
            let negative = if self.eat(&Tok::Minus) {
                true
            } else {
                let signed = self.eat(&Tok::Plus);
                if !signed && !first {
                    break;
                }
                false
            };
            let t: A = self.term()?;
            terms.push((start, if negative { t.neg() } else { t }));
            first = false;
            if !matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
                break;
            }
        }
        Ok(terms)
    }

    fn term<A: Algebra>(&mut self) -> Result<A> {
        let mut acc: A = self.factor()?;
        loop {
            let starred = self.eat(&Tok::Star);
            match self.peek() {
                Some(Tok::Plus | Tok::Minus | Tok::RParen) | None if !starred => return Ok(acc),
                _ => acc = acc.mul(&self.factor()?),
            }
        }
    }

    fn factor<A: Algebra>(&mut self) -> Result<A> {
        let base: A = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let n: u32 = n
                    .try_into()
                    .ok()
                    .filter(|&n| n <= MAX_EXPONENT)
                    .ok_or_else(|| Error::parse(at, format!("exponent larger than {MAX_EXPONENT}")))?;
                Ok(base.pow(n))
            }
            _ => Err(Error::parse(at, "expected a nonnegative integer exponent")),
        }
    }

    fn atom<A: Algebra>(&mut self) -> Result<A> {
        let at = self.offset();
        let Some(tok) = self.peek() else {
            return Err(Error::parse(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(p) => {
                let mut q = Scalar::from_integer(p.clone());
                if self.eat(&Tok::Slash) {
                    let den_at = self.offset();
                    match self.peek() {
                        Some(Tok::Num(d)) if *d != BigInt::from(0) => {
                            self.pos += 1;
                            q /= Scalar::from_integer(d.clone());
                        }
                        _ => return Err(Error::parse(den_at, "expected a nonzero denominator")),
                    }
                }
                Ok(A::scalar(q))
            }
            Tok::LParen => {
                let inner = self.sum::<A>()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::parse(at, "unbalanced '('"));
                }
                Ok(inner.iter().fold(A::scalar(Scalar::zero()), |acc, (_, t)| acc.add(t)))
            }
            Tok::RParen => Err(Error::parse(at, "unbalanced ')'")),
            t => A::atom(t).ok_or_else(|| Error::parse(at, format!("unexpected token {}", describe(t)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Slash => "'/'",
        Tok::Create => "'a+'",
        Tok::Annihilate => "'a'",
        Tok::X => "'x'",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
    }
}

fn parse_with<A: Algebra>(text: &str) -> Result<Vec<(usize, A)>> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { toks: &toks, pos: 0, end: text.len() };
    let terms = p.sum::<A>()?;
    if p.pos < toks.len() {
        let (at, tok) = &toks[p.pos];
        let msg = if *tok == Tok::RParen { "unbalanced ')'".to_string() } else { format!("unexpected token {}", describe(tok)) };
        return Err(Error::parse(*at, msg));
    }
    Ok(terms)
}

/// A parsed linear combination of boson words, kept unordered (as written).
#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    /// Top-level summands: byte offset and their expansion into words.
    summands: Vec<(usize, Comb)>,
}

/// Result of [`parse_expression`].
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Word(BosonWord),
    Operator(HomogeneousOperator),
}

impl Expression {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(Expression { summands: parse_with::<Comb>(text)? })
    }

    /// Words with their merged coefficients.
    pub fn terms(&self) -> BTreeMap<Vec<Letter>, Scalar> {
        self.summands.iter().fold(Comb::new(), |acc, (_, c)| acc.add(c))
    }

    /// The expression as a single word with coefficient one.
    pub fn as_word(&self) -> Option<BosonWord> {
        let terms = self.terms();
        match terms.iter().collect::<Vec<_>>().as_slice() {
            [(w, c)] if c.is_one() => Some(BosonWord::new(w.to_vec())),
            _ => None,
        }
    }

    pub fn to_normal_form(&self) -> NormalForm {
        self.terms()
            .iter()
            .fold(NormalForm::zero(), |acc, (w, c)| acc.add(&normalize(&BosonWord::new(w.clone())).scale(c)))
    }

    /// `(alpha, beta) -> c` for `sum c (a+)^alpha a (a+)^beta`, without any
    /// weight condition.
    pub fn single_annihilator_terms(&self) -> Result<BTreeMap<(usize, usize), Scalar>> {
        let mut out: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (at, comb) in &self.summands {
            for (w, c) in comb {
                let word = BosonWord::new(w.clone());
                if word.annihilations() != 1 {
                    return Err(Error::parse(*at, format!("{} in '{word}'", Error::NotSingleAnnihilator)));
                }
                let alpha = w.iter().take_while(|&&l| l == Letter::Create).count();
                *out.entry((alpha, w.len() - alpha - 1)).or_insert_with(Scalar::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        if out.is_empty() {
            return Err(Error::parse(0, "operator has no terms"));
        }
        Ok(out)
    }

    /// Homogeneous single-annihilator operator; mixed weights are reported at
    /// the first summand whose weight differs from the first one.
    pub fn to_operator(&self) -> Result<HomogeneousOperator> {
        let terms = self.single_annihilator_terms()?;
        let mut first: Option<i64> = None;
        for (at, comb) in &self.summands {
            for w in comb.keys() {
                let weight = w.len() as i64 - 2;
                match first {
                    None => first = Some(weight),
                    Some(f) if f != weight => {
                        return Err(Error::parse(*at, Error::MixedWeight(f, weight).to_string()));
                    }
                    _ => {}
                }
            }
        }
        HomogeneousOperator::new(terms)
    }
}

/// A single word (coefficient one) parses as [`Parsed::Word`]; anything else
/// must be a homogeneous single-annihilator operator.
pub fn parse_expression(text: &str) -> Result<Parsed> {
    let e = Expression::parse(text)?;
    match e.as_word() {
        Some(w) => Ok(Parsed::Word(w)),
        None => e.to_operator().map(Parsed::Operator),
    }
}

pub fn parse_word(text: &str) -> Result<BosonWord> {
    Expression::parse(text)?
        .as_word()
        .ok_or_else(|| Error::parse(0, "expected a single word with coefficient 1"))
}

pub fn parse_operator(text: &str) -> Result<HomogeneousOperator> {
    Expression::parse(text)?.to_operator()
}

/// Polynomial in `x`, e.g. `1 + x^2` or `3/2 x - x^3`.
pub fn parse_polynomial(text: &str) -> Result<ParamPoly> {
    Ok(parse_with::<ParamPoly>(text)?
        .iter()
        .fold(ParamPoly::zero(), |acc, (_, t)| Coeff::add(&acc, t)))
}
