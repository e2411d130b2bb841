//! Error types shared across the library.

use thiserror::Error;

/// Typed domain errors. Every fallible operation in this crate returns one of
/// these; none of them are recoverable by retrying with the same inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A rational with even reduced denominator was passed where a dyadic
    /// integer (odd denominator) is required.
    #[error("not a dyadic integer: {0} has an even reduced denominator")]
    EvenDenominator(String),

    /// Attempted to invert an even residue in Z/2^N, which is not a unit.
    #[error("residue {value} is even and has no inverse mod 2^{mod_exp}")]
    EvenResidue { value: String, mod_exp: u32 },

    /// An index or parameter fell outside its documented range.
    #[error("out of range: {0}")]
    BadRange(String),

    /// Root lifting is only defined for even order m.
    #[error("no dyadic root exists for odd m = {0}")]
    OddM(u64),

    /// The residue handed to a lifting step is not a root at its own modulus.
    #[error("residue {residue} mod 2^{mod_exp} is not a root: H = {h_value} (mod 2^{mod_exp})")]
    NotARoot {
        residue: String,
        mod_exp: u32,
        h_value: String,
    },

    /// The modulus exponent is below the minimum the operation supports
    /// (1 for plain reduction, 3 for anything built on lifting).
    #[error("unsupported modulus exponent {0} for this operation")]
    BadModulus(u32),

    /// Text did not match the serialization grammar.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
