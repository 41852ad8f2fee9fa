use num_rational::Rational64;
use thiserror::Error;

/// Errors raised by the exact-arithmetic layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible series: leading coefficient is zero")]
    NonInvertible,

    #[error("leading coefficient {0} is not the square of a rational")]
    NonSquareLeading(String),

    /// The requested exponent is at or beyond the bound below which the
    /// series is known exactly.
    #[error("coefficient of q^{exponent} requested but series is only exact below q^{bound}")]
    PrecisionExceeded {
        exponent: Rational64,
        bound: Rational64,
    },

    #[error("exponent {exponent} is not a multiple of 1/{exp_den}")]
    ExponentNotRepresentable { exponent: Rational64, exp_den: u32 },

    #[error("operation requires integer exponents (exp_den = 1), found exp_den = {0}")]
    FractionalExponents(u32),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// A multiple-cover sum needs an invariant the table does not hold.
    #[error("table is missing an entry for class {0}")]
    Incomplete(String),
}

pub type Result<T> = std::result::Result<T, Error>;
