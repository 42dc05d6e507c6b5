use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// How a dyadic is cut to a fixed number of decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RoundingMode {
    /// Drop the digits past the cut. Reproduces the reference medal table.
    #[default]
    Truncate,
    HalfUp,
}

/// An exact rational `mantissa / 2^scale` in `[0, 1)`.
///
/// Canonical form keeps the mantissa odd, so two dyadics are equal exactly
/// when their fields are. Zero is stored as `0 / 2^0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mantissa: BigUint,
    scale: u64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic::default()
    }

    /// Canonicalizes `mantissa / 2^scale`; fails when the value is not below 1.
    pub fn new(mantissa: BigUint, scale: u64) -> Result<Self> {
        if mantissa.bits() > scale {
            return Err(Error::NotDyadicRank(format!(
                "{mantissa}/2^{scale} is not below 1"
            )));
        }
        Ok(Self::canonical(mantissa, scale))
    }

    fn canonical(mantissa: BigUint, scale: u64) -> Self {
        match mantissa.trailing_zeros() {
            None => Dyadic::zero(),
            Some(tz) => {
                let shift = tz.min(scale);
                Dyadic {
                    mantissa: mantissa >> shift,
                    scale: scale - shift,
                }
            }
        }
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn to_rational(&self) -> Rational {
        let den = BigUint::one() << self.scale;
        Rational::new(BigInt::from(self.mantissa.clone()), BigInt::from(den))
            .expect("power of two is nonzero")
    }

    /// The dyadic equal to `r`, if `r` lies in `[0, 1)` with a power-of-two
    /// denominator.
    pub fn from_rational(r: &Rational) -> Result<Self> {
        let reject = || Error::NotDyadicRank(r.to_string());
        if r.is_negative() {
            return Err(reject());
        }
        let den = r.denom().magnitude();
        if den.count_ones() != 1 {
            return Err(reject());
        }
        let scale = den.trailing_zeros().unwrap_or(0);
        Dyadic::new(r.numer().magnitude().clone(), scale).map_err(|_| reject())
    }

    /// Bit `i` of the binary expansion after the point, counting from 1.
    pub fn bit(&self, i: u64) -> bool {
        if i == 0 || i > self.scale {
            return false;
        }
        self.mantissa.bit(self.scale - i)
    }

    /// Exact terminating binary expansion: `"0"` for zero, otherwise `"0."`
    /// followed by `scale` bits ending in a 1.
    pub fn to_binary_string(&self) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let digits = self.mantissa.to_str_radix(2);
        let pad = self.scale as usize - digits.len();
        let mut out = String::with_capacity(2 + self.scale as usize);
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take(pad));
        out.push_str(&digits);
        out
    }

    /// Parses `0`, `0.`, or `0.<bits>`; trailing zero bits are allowed and
    /// dropped.
    pub fn parse_binary(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |message: String| Error::Parse {
            position: 0,
            message,
        };
        let bits = match s.strip_prefix("0.") {
            Some(bits) => bits,
            None if s == "0" => "",
            None => return Err(bad(format!("binary rank must start with `0.`: `{s}`"))),
        };
        if let Some(pos) = bits.find(|c| c != '0' && c != '1') {
            return Err(Error::Parse {
                position: pos + 2,
                message: format!("not a binary digit in `{s}`"),
            });
        }
        if bits.is_empty() {
            return Ok(Dyadic::zero());
        }
        let mantissa = BigUint::parse_bytes(bits.as_bytes(), 2).unwrap_or_default();
        Ok(Self::canonical(mantissa, bits.len() as u64))
    }

    /// Decimal expansion with exactly `digits` fractional digits.
    pub fn to_decimal_string(&self, digits: usize, mode: RoundingMode) -> String {
        // value * 10^digits = mantissa * 10^digits / 2^scale
        let scaled = &self.mantissa * Pow::pow(BigUint::from(10u32), digits);
        let mut cut = &scaled >> self.scale;
        if mode == RoundingMode::HalfUp && self.scale > 0 && scaled.bit(self.scale - 1) {
            cut += 1u32;
        }
        let text = cut.to_str_radix(10);
        if text.len() > digits {
            // rounding carried into the units digit
            let (int, frac) = text.split_at(text.len() - digits);
            return format!("{int}.{frac}");
        }
        format!("0.{text:0>digits$}")
    }

    /// Nearest binary64 value.
    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64()
    }

    /// Number of 1-bits in the expansion.
    pub fn ones(&self) -> u64 {
        self.mantissa.count_ones()
    }

    pub(crate) fn from_bits_unchecked(mantissa: BigUint, scale: u64) -> Self {
        Self::canonical(mantissa, scale)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        // align to the common scale
        let (a, b) = if self.scale >= other.scale {
            (
                self.mantissa.clone(),
                &other.mantissa << (self.scale - other.scale),
            )
        } else {
            (
                &self.mantissa << (other.scale - self.scale),
                other.mantissa.clone(),
            )
        };
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({})", self.to_binary_string())
    }
}

impl FromStr for Dyadic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Dyadic::parse_binary(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(m: u64, k: u64) -> Dyadic {
        Dyadic::new(BigUint::from(m), k).unwrap()
    }

    #[test]
    fn binary_strings() {
        assert_eq!(dy(1, 1).to_binary_string(), "0.1");
        assert_eq!(dy(1, 3).to_binary_string(), "0.001");
        assert_eq!(Dyadic::zero().to_binary_string(), "0");
        assert_eq!(dy(9, 4).to_binary_string(), "0.1001");
    }

    #[test]
    fn canonicalizes_even_mantissa() {
        let d = dy(4, 4);
        assert_eq!(d.mantissa(), &BigUint::from(1u32));
        assert_eq!(d.scale(), 2);
        assert_eq!(dy(0, 9), Dyadic::zero());
        assert_eq!(Dyadic::zero().scale(), 0);
    }

    #[test]
    fn rejects_values_at_or_above_one() {
        assert!(Dyadic::new(BigUint::from(2u32), 1).is_err());
        assert!(Dyadic::new(BigUint::from(1u32), 0).is_err());
        assert!(Dyadic::from_rational(&Rational::one()).is_err());
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(dy(1, 1).to_decimal_string(7, RoundingMode::Truncate), "0.5000000");
        assert_eq!(dy(1, 2).to_decimal_string(7, RoundingMode::Truncate), "0.2500000");
        assert_eq!(dy(9, 4).to_decimal_string(7, RoundingMode::Truncate), "0.5625000");
        assert_eq!(Dyadic::zero().to_decimal_string(7, RoundingMode::Truncate), "0.0000000");
        // 249/256 = 0.97265625
        assert_eq!(dy(249, 8).to_decimal_string(7, RoundingMode::Truncate), "0.9726562");
        assert_eq!(dy(249, 8).to_decimal_string(7, RoundingMode::HalfUp), "0.9726563");
        // 255/256 = 0.99609375 rounds up into the units digit at 2 places
        assert_eq!(dy(255, 8).to_decimal_string(2, RoundingMode::HalfUp), "1.00");
        assert_eq!(dy(1, 3).to_decimal_string(1, RoundingMode::Truncate), "0.1");
    }

    #[test]
    fn parse_binary_accepts_trailing_zeros() {
        assert_eq!(Dyadic::parse_binary("0.1000").unwrap(), dy(1, 1));
        assert_eq!(Dyadic::parse_binary("0").unwrap(), Dyadic::zero());
        assert_eq!(Dyadic::parse_binary("0.").unwrap(), Dyadic::zero());
        assert!(Dyadic::parse_binary("1.1").is_err());
        assert!(matches!(
            Dyadic::parse_binary("0.12"),
            Err(Error::Parse { position: 3, .. })
        ));
    }

    #[test]
    fn rational_conversion() {
        let r: Rational = "9/16".parse().unwrap();
        assert_eq!(Dyadic::from_rational(&r).unwrap(), dy(9, 4));
        assert_eq!(dy(9, 4).to_rational(), r);
        assert!(Dyadic::from_rational(&"1/3".parse().unwrap()).is_err());
        assert!(Dyadic::from_rational(&"-1/2".parse().unwrap()).is_err());
        assert_eq!(Dyadic::from_rational(&Rational::zero()).unwrap(), Dyadic::zero());
    }

    #[test]
    fn ordering_matches_rationals() {
        let a = dy(3, 2);
        let b = dy(5, 3);
        assert_eq!(a.cmp(&b), a.to_rational().cmp(&b.to_rational()));
        assert!(Dyadic::zero() < dy(1, 40));
    }

    #[test]
    fn bits() {
        let d = dy(9, 4);
        let bits: Vec<bool> = (1..=4).map(|i| d.bit(i)).collect();
        assert_eq!(bits, [true, false, false, true]);
        assert!(!d.bit(5));
    }
}
