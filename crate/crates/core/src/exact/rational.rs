use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed fraction in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Builds `numer / denom`, reducing to lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or 1 as an [`Ordering`] against zero.
    pub fn sign(&self) -> Ordering {
        self.0.numer().sign().cmp(&Sign::NoSign)
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    /// Integer power; negative exponents invert.
    pub fn pow_int(&self, exp: i64) -> Result<Rational> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(Pow::pow(&self.0, BigInt::from(exp))))
    }

    /// Exact `n`-th root of a nonnegative rational, if numerator and
    /// denominator are both perfect `n`-th powers.
    pub fn exact_root(&self, n: u32) -> Option<Rational> {
        if n == 0 || self.is_negative() {
            return None;
        }
        let num = self.0.numer().magnitude();
        let den = self.0.denom().magnitude();
        let rn = perfect_root(num, n)?;
        let rd = perfect_root(den, n)?;
        Some(Rational(BigRational::new(
            BigInt::from_biguint(Sign::Plus, rn),
            BigInt::from_biguint(Sign::Plus, rd),
        )))
    }

    /// `self^exp` when the result is rational; `None` otherwise.
    ///
    /// Negative bases are accepted only for integer exponents.
    pub fn pow_rational(&self, exp: &Rational) -> Option<Rational> {
        if exp.is_integer() {
            let e = exp.numer().to_i64()?;
            return self.pow_int(e).ok();
        }
        if !self.is_positive() {
            return None;
        }
        let root = exp.denom().to_u32()?;
        let e = exp.numer().to_i64()?;
        self.exact_root(root)?.pow_int(e).ok()
    }

    /// Nearest binary64 value.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact value of a finite binary64.
    pub fn from_f64(x: f64) -> Option<Rational> {
        BigRational::from_float(x).map(Rational)
    }
}

fn perfect_root(x: &BigUint, n: u32) -> Option<BigUint> {
    let r = x.nth_root(n);
    if Pow::pow(&r, n) == *x {
        Some(r)
    } else {
        None
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a`, `a/b`, and decimal literals such as `-1.25` or `3e-7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse {
            position: 0,
            message: format!("{msg}: `{s}`"),
        };
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad("invalid numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("invalid denominator"))?;
            return Rational::new(n, d);
        }
        parse_decimal(s).ok_or_else(|| bad("invalid number"))
    }
}

/// Exact value of a decimal literal with optional fraction and exponent.
pub(crate) fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = Rational::from_integer(10);
    let mut value = Rational::from_integer(digits) * ten.pow_int(scale).ok()?;
    if negative {
        value = -value;
    }
    Some(value)
}
