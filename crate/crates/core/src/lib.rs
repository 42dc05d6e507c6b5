//! Exact lexicographic ranks, height-1 grossnumerals and a truncated
//! Levi-Civita field.
//!
//! * [`exact`]: arbitrary-precision rationals and dyadic ranks in `[0, 1)`.
//! * [`lexrank`]: the order-preserving dyadic encoding of medal words.
//! * [`grossnum`]: sparse polynomials in an infinite unit `G` with
//!   decidable comparison.
//! * [`levicivita`]: series in a positive infinitesimal `d`, with
//!   derivative extraction.
//! * [`parser`]: calculator grammar shared by the command-line tools.
//! * [`cli`]: the `lexirank` command.

pub mod cli;
pub mod error;
pub mod exact;
pub mod grossnum;
pub mod levicivita;
pub mod lexrank;
pub mod par;
pub mod parser;

pub use error::{Error, Result};
pub use exact::{Dyadic, Rational, RoundingMode};
pub use grossnum::{Classification, Grossnumeral};
pub use levicivita::LcNumber;
pub use lexrank::{MedalWord, RankedRow};
