//! Order-preserving dyadic ranks for medal words.
//!
//! A word `(w1, ..., wL)` is encoded as the binary fraction made of `w1`
//! ones, a zero, `w2` ones, a zero, ..., and finally `wL` ones. Comparing the
//! ranks as rationals is the same as comparing the words lexicographically,
//! and the word can be read back from the bits.

mod table;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exact::{Dyadic, Rational};

pub use table::{
    build_table, build_table_with, ingest_csv, render_csv, render_json_lines, render_text,
    MedalSheet, RankedRow,
};

/// Medal counts by class, most significant class first.
///
/// Always stored without trailing zero letters; the empty word means no
/// medals at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MedalWord(Vec<u64>);

impl MedalWord {
    pub fn new(letters: impl Into<Vec<u64>>) -> Self {
        let mut letters = letters.into();
        while letters.last() == Some(&0) {
            letters.pop();
        }
        MedalWord(letters)
    }

    pub fn empty() -> Self {
        MedalWord(Vec::new())
    }

    pub fn letters(&self) -> &[u64] {
        &self.0
    }

    /// Letter `n` (0-based); zero past the end.
    pub fn letter(&self, n: usize) -> u64 {
        self.0.get(n).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters padded with zeros up to `width`.
    pub fn padded(&self, width: usize) -> Vec<u64> {
        (0..width.max(self.len())).map(|i| self.letter(i)).collect()
    }
}

impl From<Vec<u64>> for MedalWord {
    fn from(v: Vec<u64>) -> Self {
        MedalWord::new(v)
    }
}

impl<const N: usize> From<[u64; N]> for MedalWord {
    fn from(v: [u64; N]) -> Self {
        MedalWord::new(v.to_vec())
    }
}

impl fmt::Display for MedalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MedalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for MedalWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parser::parse_word(s)
    }
}

impl Ord for MedalWord {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_compare(self.letters(), other.letters())
    }
}

impl PartialOrd for MedalWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on words, reading missing letters as zero.
pub fn lex_compare(u: &[u64], v: &[u64]) -> Ordering {
    let n = u.len().max(v.len());
    for i in 0..n {
        let a = u.get(i).copied().unwrap_or(0);
        let b = v.get(i).copied().unwrap_or(0);
        match a.cmp(&b) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// The dyadic rank of `w`, built directly from its bit pattern.
pub fn encode_rank(w: &MedalWord) -> Dyadic {
    let letters = w.letters();
    if letters.is_empty() {
        return Dyadic::zero();
    }
    let total: u64 = letters.iter().sum::<u64>() + letters.len() as u64 - 1;
    let mut bits: Vec<u8> = Vec::with_capacity(total as usize);
    for (i, &n) in letters.iter().enumerate() {
        if i > 0 {
            bits.push(0);
        }
        bits.extend(std::iter::repeat(1).take(n as usize));
    }
    let mantissa = BigUint::from_radix_be(&bits, 2).unwrap_or_default();
    Dyadic::from_bits_unchecked(mantissa, total)
}

/// The rank of `w` evaluated from the closed-form sum
/// `sum_n 2^-(w1 + ... + w(n-1) + n - 1) * sum_{m=1..wn} 2^-m`.
///
/// Independent of the bit construction in [`encode_rank`]; the two must agree.
pub fn rank_by_formula(w: &MedalWord) -> Rational {
    let half = Rational::new(1, 2).expect("nonzero");
    let mut total = Rational::zero();
    let mut prefix: i64 = 0;
    for (n, &letter) in w.letters().iter().enumerate() {
        let offset = half.pow_int(prefix + n as i64).expect("nonzero base");
        let mut inner = Rational::zero();
        for m in 1..=letter as i64 {
            inner = inner + half.pow_int(m).expect("nonzero base");
        }
        total = total + offset * inner;
        prefix += letter as i64;
    }
    total
}

/// Reads the medal word back from its rank: the run lengths of 1-bits
/// between 0-bits are the letters.
pub fn decode_rank(d: &Dyadic) -> MedalWord {
    let mut letters = Vec::new();
    let mut run = 0u64;
    for i in 1..=d.scale() {
        if d.bit(i) {
            run += 1;
        } else {
            letters.push(run);
            run = 0;
        }
    }
    if !d.is_zero() {
        letters.push(run);
    }
    MedalWord::new(letters)
}

/// Like [`decode_rank`] for an arbitrary rational, which must be a dyadic in
/// `[0, 1)`.
pub fn decode_rational(r: &Rational) -> Result<MedalWord> {
    Ok(decode_rank(&Dyadic::from_rational(r)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> MedalWord {
        MedalWord::new(v.to_vec())
    }

    #[test]
    fn lexicographic_examples() {
        assert_eq!(lex_compare(&[13, 11, 9], &[11, 5, 10]), Ordering::Greater);
        assert_eq!(lex_compare(&[1, 0, 1], &[1]), Ordering::Greater);
        assert_eq!(lex_compare(&[1, 0, 0], &[1]), Ordering::Equal);
        assert_eq!(lex_compare(&[], &[0, 0, 1]), Ordering::Less);
        assert_eq!(w(&[2, 7]).cmp(&w(&[2, 7])), Ordering::Equal);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(w(&[1, 0, 0]).letters(), &[1]);
        assert!(w(&[0, 0]).is_empty());
        assert_eq!(w(&[1]).padded(3), vec![1, 0, 0]);
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            encode_rank(&w(&[13, 11, 9])).to_binary_string(),
            "0.11111111111110111111111110111111111"
        );
        assert_eq!(encode_rank(&w(&[])), Dyadic::zero());
        assert_eq!(encode_rank(&w(&[0, 0, 1])).to_binary_string(), "0.001");
        assert_eq!(encode_rank(&w(&[0, 0, 1])).to_rational(), "1/8".parse().unwrap());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_rank(&"0.01".parse().unwrap()), w(&[0, 1]));
        assert_eq!(decode_rank(&"0.1001".parse().unwrap()), w(&[1, 0, 1]));
        assert_eq!(decode_rank(&Dyadic::zero()), MedalWord::empty());
        // every dyadic decodes, including ones that end in a zero run
        assert_eq!(decode_rank(&"0.0001".parse().unwrap()), w(&[0, 0, 0, 1]));
    }

    #[test]
    fn decode_rational_rejects_non_dyadic() {
        assert!(matches!(
            decode_rational(&"1/3".parse().unwrap()),
            Err(Error::NotDyadicRank(_))
        ));
        assert_eq!(decode_rational(&"9/16".parse().unwrap()).unwrap(), w(&[1, 0, 1]));
    }

    #[test]
    fn formula_matches_bits_on_table_rows() {
        for word in [[13, 11, 9], [0, 2, 6], [5, 0, 1], [0, 0, 1]] {
            let word = w(&word);
            assert_eq!(rank_by_formula(&word), encode_rank(&word).to_rational());
        }
    }
}
