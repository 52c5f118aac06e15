//! Rate bounds for binary codes whose VC-dimension and minimum distance are
//! both constrained, together with exact finite-length oracles that check the
//! combinatorial facts those bounds rest on.
//!
//! Asymptotic bounds take a [`BoundQuery`] `(d, delta)` of normalized
//! VC-dimension and normalized minimum distance:
//!
//! * upper bounds: [`upper::r_lp`], [`upper::sauer_shelah_rate`],
//!   [`upper::haussler_rate`], [`upper::shortening_rate`]
//! * lower bounds: [`cw_lower::cwc_rate`], [`markov::r_ma`]
//!
//! The [`oracle`] module works on explicit codes of length at most 64.

pub mod cli;
pub mod curve;
pub mod cw_lower;
mod error;
pub mod markov;
pub mod numeric;
pub mod oracle;
pub mod upper;

pub use error::{Error, Result};
pub use numeric::{Probability, ToleranceConfig};
pub use upper::{BoundQuery, Method, RateValue};

/// Arbitrary-precision nonnegative count.
pub type BigCount = num_bigint::BigUint;
