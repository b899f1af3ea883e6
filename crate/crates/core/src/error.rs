use std::fmt;

/// Errors produced by field construction, polynomial arithmetic and the
/// closed-form power sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The given characteristic failed the primality check.
    NonPrime(u64),
    /// The given order is not a prime power.
    NotPrimePower(u64),
    /// The requested field order exceeds the configured bound.
    BoundExceeded { q: u64, max: u64 },
    /// Operands belong to a different field context, or the two contexts are
    /// not related by the expected extension step.
    ContextMismatch,
    /// Multiplicative inverse of zero (or division by the zero polynomial).
    DivisionByZero,
    /// An index or argument lies outside the documented range.
    RangeError {
        what: &'static str,
        value: u64,
        lo: u64,
        hi: u64,
    },
    /// Polynomial division left a nonzero remainder.
    InexactDivision,
    /// The formula only applies to the other parity of q.
    WrongParity,
    /// 2 has no inverse in characteristic 2.
    EvenCharacteristic,
    /// An extension-field value expected to lie in the base field did not.
    NotInBaseField,
    /// The arguments fall outside the windows where the specialized case
    /// formula applies.
    OutOfWindow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrime(p) => write!(f, "{p} is not prime"),
            Error::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::BoundExceeded { q, max } => {
                write!(f, "field order {q} exceeds the configured bound {max}")
            }
            Error::ContextMismatch => write!(f, "field context mismatch"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::RangeError {
                what,
                value,
                lo,
                hi,
            } => write!(f, "{what} = {value} outside [{lo}, {hi}]"),
            Error::InexactDivision => write!(f, "polynomial division left a nonzero remainder"),
            Error::WrongParity => write!(f, "formula applies to the other parity of q"),
            Error::EvenCharacteristic => write!(f, "2 is not invertible in characteristic 2"),
            Error::NotInBaseField => write!(f, "value does not lie in the base field"),
            Error::OutOfWindow => write!(f, "arguments outside the case-formula windows"),
        }
    }
}

impl std::error::Error for Error {}
