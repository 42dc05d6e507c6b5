//! Truncated Levi-Civita field.
//!
//! Numbers are finite sums `c * d^e` in a positive infinitesimal `d` with
//! rational exponents (negative exponents give infinitely large parts) and
//! binary64 coefficients. Each value keeps at most `depth` terms, namely the
//! ones with the smallest exponents, which are the ones that decide sign and
//! order.
//!
//! Truncation loses everything from some exponent on. Every value records
//! that exponent as its horizon, and arithmetic propagates it, so a stored
//! coefficient is never the partial sum of a product or series whose missing
//! contributions would land on the same exponent.
//!
//! Exponents stay exact; only coefficients are floating point.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::par::{self, Execution};

pub const DEFAULT_DEPTH: usize = 10;

/// Coefficients smaller than this in magnitude are dropped.
pub const COEFF_FLOOR: f64 = 1e-300;

/// Upper bound on series terms, as a multiple of the depth.
const SERIES_SPAN: usize = 8;

/// Elementary functions defined on finite arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Sin,
    Cos,
    Exp,
}

impl Elementary {
    pub fn name(self) -> &'static str {
        match self {
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Exp => "exp",
        }
    }

    /// `f^(k)(a)`.
    fn derivative_at(self, k: usize, a: f64) -> f64 {
        match self {
            Elementary::Exp => a.exp(),
            Elementary::Sin => [a.sin(), a.cos(), -a.sin(), -a.cos()][k % 4],
            Elementary::Cos => [a.cos(), -a.sin(), -a.cos(), a.sin()][k % 4],
        }
    }
}

#[derive(Clone)]
pub struct LcNumber {
    /// Ascending by exponent, no zero coefficients, at most `depth` entries,
    /// all below `horizon`.
    terms: Vec<(Rational, f64)>,
    /// First exponent at which the value is no longer known; `None` when
    /// nothing has been truncated.
    horizon: Option<Rational>,
    depth: usize,
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(a.min(b)),
    }
}

fn add_opt(a: Option<&Rational>, b: Option<&Rational>) -> Option<Rational> {
    Some(a? + b?)
}

impl LcNumber {
    pub fn zero(depth: usize) -> Self {
        LcNumber {
            terms: Vec::new(),
            horizon: None,
            depth: depth.max(1),
        }
    }

    pub fn constant(c: f64, depth: usize) -> Self {
        Self::monomial(c, Rational::zero(), depth)
    }

    /// The infinitesimal `d`.
    pub fn d(depth: usize) -> Self {
        Self::monomial(1.0, Rational::one(), depth)
    }

    pub fn monomial(c: f64, exponent: Rational, depth: usize) -> Self {
        Self::from_terms([(exponent, c)], depth)
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats and
    /// keeping the `depth` smallest exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, f64)>, depth: usize) -> Self {
        Self::collect(terms, None, depth)
    }

    fn collect(
        terms: impl IntoIterator<Item = (Rational, f64)>,
        horizon: Option<Rational>,
        depth: usize,
    ) -> Self {
        let mut map: BTreeMap<Rational, f64> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert(0.0) += c;
        }
        Self::from_map(map, horizon, depth)
    }

    fn from_map(map: BTreeMap<Rational, f64>, mut horizon: Option<Rational>, depth: usize) -> Self {
        let depth = depth.max(1);
        let mut terms = Vec::with_capacity(depth.min(map.len()));
        for (e, c) in map {
            if horizon.as_ref().is_some_and(|h| e >= *h) {
                break;
            }
            if c.abs() < COEFF_FLOOR {
                continue;
            }
            if terms.len() == depth {
                horizon = Some(e);
                break;
            }
            terms.push((e, c));
        }
        LcNumber {
            terms,
            horizon,
            depth,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Same value re-truncated to `depth` terms.
    pub fn with_depth(&self, depth: usize) -> Self {
        Self::collect(self.terms.iter().cloned(), self.horizon.clone(), depth)
    }

    pub fn terms(&self) -> &[(Rational, f64)] {
        &self.terms
    }

    /// First exponent lost to truncation, if any.
    pub fn horizon(&self) -> Option<&Rational> {
        self.horizon.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.horizon.is_none()
    }

    pub fn coefficient(&self, exponent: &Rational) -> f64 {
        self.terms
            .iter()
            .find(|(e, _)| e == exponent)
            .map_or(0.0, |(_, c)| *c)
    }

    /// Whether the coefficient of `d^exponent` survived truncation.
    pub fn knows(&self, exponent: &Rational) -> bool {
        self.horizon.as_ref().map_or(true, |h| exponent < h)
    }

    /// Standard part: the coefficient of `d^0`.
    pub fn real_part(&self) -> f64 {
        self.coefficient(&Rational::zero())
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<&Rational> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Valuation, or the horizon when every known coefficient is zero.
    fn low(&self) -> Option<&Rational> {
        self.valuation().or(self.horizon.as_ref())
    }

    fn leading(&self) -> Option<(&Rational, f64)> {
        self.terms.first().map(|(e, c)| (e, *c))
    }

    pub fn has_infinite_part(&self) -> bool {
        self.valuation().is_some_and(Rational::is_negative)
    }

    /// Drops every coefficient with magnitude below `tol`.
    pub fn chop(&self, tol: f64) -> Self {
        LcNumber {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.abs() >= tol)
                .cloned()
                .collect(),
            horizon: self.horizon.clone(),
            depth: self.depth,
        }
    }

    /// Largest coefficient magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other)
            .terms
            .iter()
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    pub fn signum(&self) -> Ordering {
        self.leading()
            .and_then(|(_, c)| c.partial_cmp(&0.0))
            .unwrap_or(Ordering::Equal)
    }

    /// Order by the sign of the lowest-exponent coefficient of `self - other`.
    pub fn compare(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }

    fn scale_shift(&self, c: f64, shift: &Rational) -> Self {
        Self::collect(
            self.terms.iter().map(|(e, k)| (e + shift, k * c)),
            self.horizon.as_ref().map(|h| h + shift),
            self.depth,
        )
    }

    /// Splits `c * d^v * (1 + h)` with `h` of positive valuation.
    fn factor_leading(&self) -> Option<(f64, Rational, LcNumber)> {
        let (v, c) = self.leading()?;
        let v = v.clone();
        let h = LcNumber::collect(
            self.terms.iter().skip(1).map(|(e, k)| (e - &v, k / c)),
            self.horizon.as_ref().map(|hz| hz - &v),
            self.depth,
        );
        Some((c, v, h))
    }

    /// `sum_k coeff(k) * h^k` for `h` of positive valuation, summed until
    /// the remaining terms fall past the horizon of the partial sum.
    fn series(h: &LcNumber, depth: usize, mut coeff: impl FnMut(usize) -> f64) -> LcNumber {
        let mut sum = LcNumber::constant(coeff(0), depth);
        let Some(step) = h.low().cloned() else {
            return sum;
        };
        let mut power = LcNumber::constant(1.0, depth);
        let max_k = SERIES_SPAN * depth;
        for k in 1..=max_k {
            power = &power * h;
            if power.is_exact_zero() {
                return sum;
            }
            let a = coeff(k);
            if a != 0.0 {
                sum = &sum + &power.scale_shift(a, &Rational::zero());
            }
            let tail = &step * &Rational::from((k + 1) as i64);
            if sum.horizon.as_ref().is_some_and(|hz| *hz <= tail) {
                return sum;
            }
        }
        let cut = &step * &Rational::from((max_k + 1) as i64);
        let horizon = min_opt(sum.horizon.clone(), Some(cut));
        Self::collect(sum.terms, horizon, depth)
    }

    /// Multiplicative inverse: the leading monomial is inverted exactly and
    /// the rest expanded as a geometric series.
    pub fn invert(&self) -> Result<Self> {
        let (c, v, h) = self.factor_leading().ok_or(Error::DivisionByZero)?;
        let tail = Self::series(&h, self.depth, |k| if k % 2 == 0 { 1.0 } else { -1.0 });
        Ok(tail.scale_shift(1.0 / c, &-v))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.invert()?)
    }

    /// Integer power; any sign of leading coefficient.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.invert()? } else { self.clone() };
        let mut n = n.unsigned_abs();
        let mut acc = LcNumber::constant(1.0, self.depth);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `self^q` by the binomial series about the leading monomial.
    ///
    /// Integer `q` is computed by repeated multiplication and accepts any
    /// nonzero value; fractional `q` needs a positive leading coefficient.
    pub fn power(&self, q: &Rational) -> Result<Self> {
        if q.is_integer() {
            if let Ok(n) = i64::try_from(q.numer()) {
                return self.powi(n);
            }
        }
        let Some((c, v, h)) = self.factor_leading() else {
            return match q.sign() {
                Ordering::Greater => Ok(self.clone()),
                _ => Err(Error::DivisionByZero),
            };
        };
        if c <= 0.0 {
            return Err(Error::PowerUndefined(format!(
                "({self})^({q}) needs a positive leading coefficient"
            )));
        }
        let qf = q.to_f64();
        let mut binom = 1.0;
        let tail = Self::series(&h, self.depth, |k| {
            if k > 0 {
                binom *= (qf - (k - 1) as f64) / k as f64;
            }
            binom
        });
        Ok(tail.scale_shift(c.powf(qf), &(&v * q)))
    }

    /// `f(a + h) = sum_k f^(k)(a) h^k / k!` for `a` real and `h`
    /// infinitesimal. Infinite arguments have no value in this field.
    pub fn apply(&self, f: Elementary) -> Result<Self> {
        if self.has_infinite_part() {
            return Err(Error::TransferUnavailable(format!(
                "{}({self}) is undefined: the argument is infinitely large, and \
                 {} of an infinite element has no value in the Levi-Civita field",
                f.name(),
                f.name()
            )));
        }
        if !self.knows(&Rational::zero()) {
            return Err(Error::Domain(format!(
                "{}: the real part of the argument was lost to truncation",
                f.name()
            )));
        }
        let a = self.real_part();
        let h = LcNumber::collect(
            self.terms.iter().filter(|(e, _)| e.is_positive()).cloned(),
            self.horizon.clone(),
            self.depth,
        );
        let mut factorial = 1.0;
        Ok(Self::series(&h, self.depth, |k| {
            if k > 0 {
                factorial *= k as f64;
            }
            f.derivative_at(k, a) / factorial
        }))
    }

    pub fn sin(&self) -> Result<Self> {
        self.apply(Elementary::Sin)
    }

    pub fn cos(&self) -> Result<Self> {
        self.apply(Elementary::Cos)
    }

    pub fn exp(&self) -> Result<Self> {
        self.apply(Elementary::Exp)
    }
}

/// `n`-th derivative of `f` at `a`: evaluates `f(a + d)` and returns
/// `n!` times the coefficient of `d^n`.
pub fn derivative<F>(f: F, a: f64, n: usize, depth: usize) -> Result<f64>
where
    F: Fn(&LcNumber) -> Result<LcNumber>,
{
    if n >= depth {
        return Err(Error::Domain(format!(
            "derivative order {n} needs a truncation depth above {n}, got {depth}"
        )));
    }
    let x = LcNumber::from_terms([(Rational::zero(), a), (Rational::one(), 1.0)], depth);
    let y = f(&x)?;
    if y.has_infinite_part() {
        return Err(Error::Domain(format!("f has a pole at {a}: f({a} + d) = {y}")));
    }
    let order = Rational::from(n as i64);
    if !y.knows(&order) {
        return Err(Error::Domain(format!(
            "the coefficient of d^{n} was lost to truncation at depth {depth}"
        )));
    }
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    Ok(y.coefficient(&order) * factorial)
}

/// [`derivative`] at many points, in input order.
pub fn derivative_at_points<F>(
    f: F,
    points: &[f64],
    n: usize,
    depth: usize,
    exec: Execution,
) -> Vec<Result<f64>>
where
    F: Fn(&LcNumber) -> Result<LcNumber> + Sync + Send,
{
    par::map(points, exec, |&a| derivative(&f, a, n, depth))
}

/// Equal known coefficients; horizons are not compared.
impl PartialEq for LcNumber {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Add for &LcNumber {
    type Output = LcNumber;
    fn add(self, rhs: &LcNumber) -> LcNumber {
        LcNumber::collect(
            self.terms.iter().chain(rhs.terms.iter()).cloned(),
            min_opt(self.horizon.clone(), rhs.horizon.clone()),
            self.depth.max(rhs.depth),
        )
    }
}

impl Sub for &LcNumber {
    type Output = LcNumber;
    fn sub(self, rhs: &LcNumber) -> LcNumber {
        self + &(-rhs)
    }
}

impl Mul for &LcNumber {
    type Output = LcNumber;
    fn mul(self, rhs: &LcNumber) -> LcNumber {
        let depth = self.depth.max(rhs.depth);
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return LcNumber::zero(depth);
        }
        let horizon = min_opt(
            add_opt(self.low(), rhs.horizon.as_ref()),
            add_opt(rhs.low(), self.horizon.as_ref()),
        );
        let mut map: BTreeMap<Rational, f64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *map.entry(ea + eb).or_insert(0.0) += ca * cb;
            }
        }
        LcNumber::from_map(map, horizon, depth)
    }
}

impl Neg for &LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        LcNumber {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            horizon: self.horizon.clone(),
            depth: self.depth,
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: LcNumber) -> LcNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        -&self
    }
}

/// Shortest text that parses back to the same binary64.
pub(crate) fn format_coefficient(c: f64) -> String {
    let a = c.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{c:e}")
    } else {
        format!("{c}")
    }
}

impl fmt::Display for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_sign_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = c.abs();
            if e.is_zero() {
                f.write_str(&format_coefficient(c))?;
            } else {
                if c != 1.0 {
                    write!(f, "{}*", format_coefficient(c))?;
                }
                crate::grossnum::write_power(f, "d", e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LcNumber[{}]({self}", self.depth)?;
        if let Some(h) = &self.horizon {
            write!(f, " + O(d^({h}))")?;
        }
        f.write_str(")")
    }
}
