//! Exact scalar kernel: arbitrary-precision rationals and dyadic ranks.

mod dyadic;
pub(crate) mod rational;

pub use dyadic::{Dyadic, RoundingMode};
pub use rational::Rational;
