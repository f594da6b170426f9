//! Exact arithmetic kernel: prime fields, dense univariate polynomials, and
//! sparse multivariate polynomials over `F_p`.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so the types can be shared freely across worker threads.

mod fp;
mod multipoly;
mod poly;

pub use fp::{is_prime, FpElt, PrimeField};
pub(crate) use fp::pow_mod;
pub use multipoly::{MpCtx, MultiPoly};
pub use poly::{specialize, CoeffRing, DensePoly};

use thiserror::Error;

/// Errors from the arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("gcd of an empty list is undefined")]
    EmptyInput,
    /// Division left a nonzero remainder. This signals an internal invariant
    /// violation (or an invalid prime choice upstream), never a user error.
    #[error("inexact polynomial division, remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("leading coefficient {lead} is not invertible")]
    NonInvertibleLeading { lead: String },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("modulus {p} exceeds the supported range (p <= 2^31 - 1)")]
    ModulusTooLarge { p: u64 },
    #[error("assignment covers {got} variables but the polynomial ring has {expected}")]
    AssignmentArity { expected: usize, got: usize },
}

/// Greatest common divisor of a non-empty list of positive integers.
pub fn gcd_all(values: &[u64]) -> Result<u64, ArithError> {
    if values.is_empty() {
        return Err(ArithError::EmptyInput);
    }
    Ok(values.iter().copied().fold(0, gcd))
}

/// gcd with the convention gcd(0, n) = n.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
