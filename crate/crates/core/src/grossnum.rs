//! Height-1 grossnumerals: finite sums `c * G^e` with rational coefficients
//! and rational constant exponents, where `G` is an infinitely large unit.
//!
//! At height 1 the order is decidable: `x > y` exactly when the
//! highest-exponent coefficient of `x - y` is positive. Exponents that
//! themselves contain `G` are not representable (see
//! [`HEIGHT_UNSUPPORTED`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::lexrank::MedalWord;

/// Message attached to every rejection of `G` inside an exponent.
pub const HEIGHT_UNSUPPORTED: &str = "height >= 2 grossnumerals are not supported: \
comparing multilevel expressions such as G^(G^-1) against 1 and 2 has no known algorithm \
(the value would have to be infinitely close to 1), so only rational constant exponents \
are accepted";

/// Magnitude class of a grossnumeral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    Infinitesimal,
    Finite,
    Infinite,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Zero => "zero",
            Classification::Infinitesimal => "infinitesimal",
            Classification::Finite => "finite",
            Classification::Infinite => "infinite",
        })
    }
}

/// Sparse polynomial in `G`: exponent to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Grossnumeral {
    terms: BTreeMap<Rational, Rational>,
}

impl Grossnumeral {
    pub fn zero() -> Self {
        Grossnumeral::default()
    }

    pub fn one() -> Self {
        Grossnumeral::constant(Rational::one())
    }

    /// The infinite unit `G`.
    pub fn unit() -> Self {
        Grossnumeral::monomial(Rational::one(), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Grossnumeral::monomial(c, Rational::zero())
    }

    /// `coeff * G^exponent`.
    pub fn monomial(coeff: Rational, exponent: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Grossnumeral { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut out = Grossnumeral::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exponent: Rational, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.get(&exponent) {
            Some(c) => c + &coeff,
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(exponent, coefficient)` in strictly descending exponent
    /// order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: &Rational) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    /// Highest-exponent term.
    pub fn leading(&self) -> Option<(&Rational, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The value if no term involves `G`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Rational::zero()).cloned(),
            _ => None,
        }
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Grossnumeral::zero();
        }
        Grossnumeral {
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn div_constant(&self, c: &Rational) -> Result<Self> {
        Ok(self.scale(&c.recip()?))
    }

    /// Sign of the leading coefficient.
    pub fn signum(&self) -> Ordering {
        self.leading().map_or(Ordering::Equal, |(_, c)| c.sign())
    }

    /// Decidable order: the sign of the leading term of `self - other`.
    pub fn compare(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }

    pub fn classify(&self) -> Classification {
        match self.leading() {
            None => Classification::Zero,
            Some((e, _)) if e.is_positive() => Classification::Infinite,
            Some((e, _)) if e.is_negative() => Classification::Infinitesimal,
            Some(_) => Classification::Finite,
        }
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Grossnumeral::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^q`. Sums of several terms only take nonnegative integer powers;
    /// a single term `c * G^e` takes any rational power for which `c^q` is
    /// rational.
    pub fn pow(&self, q: &Rational) -> Result<Self> {
        if q.is_integer() && !q.is_negative() {
            let n = q
                .numer()
                .try_into()
                .map_err(|_| Error::Domain(format!("exponent {q} is too large")))?;
            return Ok(self.powi(n));
        }
        match self.terms.len() {
            0 => Err(Error::DivisionByZero),
            1 => {
                let (e, c) = self.leading().expect("one term");
                let coeff = c
                    .pow_rational(q)
                    .ok_or_else(|| Error::RationalPowerUnavailable {
                        base: c.to_string(),
                        exponent: q.to_string(),
                    })?;
                Ok(Grossnumeral::monomial(coeff, e * q))
            }
            _ => Err(Error::Undefined(format!(
                "({self})^({q}) is not a grossnumeral: only single terms take negative or \
                 fractional powers, and grossnumeral division is not defined"
            ))),
        }
    }

    /// Substitutes a finite base `p > 0` for `G`.
    pub fn eval_at_base(&self, p: &Rational) -> Result<Rational> {
        if !p.is_positive() {
            return Err(Error::Domain(format!("base must be positive, got {p}")));
        }
        let mut sum = Rational::zero();
        for (e, c) in self.terms() {
            let power = p
                .pow_rational(e)
                .ok_or_else(|| Error::RationalPowerUnavailable {
                    base: p.to_string(),
                    exponent: e.to_string(),
                })?;
            sum = sum + c * &power;
        }
        Ok(sum)
    }

    /// `1 + sum |c_i| / |c_lead|` over the non-leading terms.
    ///
    /// For integer exponents, every base `p` at or above this bound gives
    /// `eval_at_base(p)` the sign of the leading coefficient.
    pub fn cauchy_bound(&self) -> Option<Rational> {
        let (_, lead) = self.leading()?;
        let lead = lead.abs();
        let rest = self
            .terms()
            .skip(1)
            .fold(Rational::zero(), |acc, (_, c)| acc + c.abs());
        Some(Rational::one() + rest.checked_div(&lead).expect("leading term is nonzero"))
    }
}

/// `w1 G^(L-1) + w2 G^(L-2) + ... + wL` for a word of canonical length `L`.
///
/// Only words of equal length compare correctly this way; use
/// [`sergeyev_rank_with_classes`] to rank words of a shared table.
pub fn sergeyev_rank(w: &MedalWord) -> Grossnumeral {
    rank_with_length(w, w.len())
}

/// Sergeyev rank with `L = classes`, for words with at most `classes`
/// letters. Ranks taken with a common `L` order like the words.
pub fn sergeyev_rank_with_classes(w: &MedalWord, classes: usize) -> Result<Grossnumeral> {
    if w.len() > classes {
        return Err(Error::Domain(format!(
            "word {w} has {} letters, more than {classes} classes",
            w.len()
        )));
    }
    Ok(rank_with_length(w, classes))
}

fn rank_with_length(w: &MedalWord, len: usize) -> Grossnumeral {
    let len = len as i64;
    Grossnumeral::from_terms(w.letters().iter().enumerate().map(|(i, &n)| {
        (
            Rational::from(len - 1 - i as i64),
            Rational::from_integer(n),
        )
    }))
}

impl Add for &Grossnumeral {
    type Output = Grossnumeral;
    fn add(self, rhs: &Grossnumeral) -> Grossnumeral {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Grossnumeral {
    type Output = Grossnumeral;
    fn sub(self, rhs: &Grossnumeral) -> Grossnumeral {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &Grossnumeral {
    type Output = Grossnumeral;
    fn mul(self, rhs: &Grossnumeral) -> Grossnumeral {
        let mut out = Grossnumeral::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Grossnumeral {
    type Output = Grossnumeral;
    fn neg(self) -> Grossnumeral {
        Grossnumeral {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Grossnumeral {
            type Output = Grossnumeral;
            fn $method(self, rhs: Grossnumeral) -> Grossnumeral {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Grossnumeral {
    type Output = Grossnumeral;
    fn neg(self) -> Grossnumeral {
        -&self
    }
}

impl Ord for Grossnumeral {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl PartialOrd for Grossnumeral {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for Grossnumeral {
    fn from(c: Rational) -> Self {
        Grossnumeral::constant(c)
    }
}

/// Power of a symbol: `X`, `X^3`, `X^(1/2)`, `X^(-1)`; empty for exponent 0.
pub(crate) fn write_power(f: &mut fmt::Formatter<'_>, symbol: &str, e: &Rational) -> fmt::Result {
    if e.is_zero() {
        Ok(())
    } else if e.is_one() {
        f.write_str(symbol)
    } else if e.is_integer() && e.is_positive() {
        write!(f, "{symbol}^{e}")
    } else {
        write!(f, "{symbol}^({e})")
    }
}

impl fmt::Display for Grossnumeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = c.abs();
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                write_power(f, "G", e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Grossnumeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grossnumeral({self})")
    }
}

impl FromStr for Grossnumeral {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parser::eval_gross_str(s)
    }
}
