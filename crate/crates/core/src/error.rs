//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the arithmetic, tower and descent routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different base fields")]
    FieldMismatch,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("no irreducible polynomial of degree {0} found")]
    IrreduciblePolynomialNotFound(u32),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("precision {precision} does not exceed the valuation {valuation}")]
    PrecisionNotPositiveOverValuation { precision: i64, valuation: i64 },
    #[error("place {0} has degree > 1; only rational places are supported here")]
    UnsupportedPlaceDegree(String),
    #[error("residue {0} has no root of the requested order in the residue field")]
    NoResidueRoot(String),
    #[error("expansion is not a unit (leading exponent {0})")]
    NotAUnit(i64),
    #[error("root order {s} is divisible by the characteristic {p}")]
    PNotCoprime { p: u32, s: i64 },
    #[error("defining element has valuation {valuation} at {place}; need a negative value prime to p")]
    NotNegativePrimeToP { place: String, valuation: String },
    #[error("valuation {valuation} at {place} is negative and divisible by p; reduce first")]
    UnreducedInput { place: String, valuation: i64 },
    #[error("search space of {0} candidates exceeds the limit")]
    SearchSpaceTooLarge(u128),
    #[error("tower degree {0} exceeds the supported maximum")]
    TowerTooLarge(u64),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("could not kill the class at {place} after {attempts} attempts")]
    KillFailed { place: String, attempts: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
