//! Characteristic-p laboratory for cyclic covers: Cartier-Manin matrices in
//! eigenspace block form, p-rank, and an independent point-counting /
//! L-polynomial oracle.
//!
//! Everything here assumes `p = 1 (mod m)`, so the Cartier operator
//! preserves each character eigenspace and the blocks can be studied one at
//! a time. Branch points are either numeric (distinct elements of `F_p`) or
//! symbolic (the variables `t_1..t_N`), the latter exposing how the
//! Hasse-Witt data varies with the branch points.

mod cartier;
mod context;
mod count;
mod extfield;
mod lpoly;
mod matrix;

pub use cartier::{
    cartier_matrix_numeric, cartier_matrix_symbolic, hasse_witt_variation, CartierBlock,
    Semilinearity,
};
pub use context::{Branch, CharpContext, EigenBasis};
pub use count::count_points;
pub use lpoly::{l_polynomial, p_rank_from_l, LPolynomial};
pub use matrix::p_rank;

use thiserror::Error;

use crate::arith::ArithError;
use crate::monodromy::ValidationError;

/// Exponent gate on the point-counting oracle: `p^k` must stay below
/// `2^GATE_BITS`. Overridable through the environment for power users.
pub const DEFAULT_GATE_BITS: u32 = 40;
pub const GATE_ENV_VAR: &str = "SPECIALIS_GATE_BITS";

/// Current gate limit as an exponent cap (clamped to keep `p^k` inside u64).
pub fn gate_bits() -> u32 {
    std::env::var(GATE_ENV_VAR)
        .ok()
        .and_then(|s| s.parse::<u32>().ok())
        .unwrap_or(DEFAULT_GATE_BITS)
        .min(62)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharpError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Datum(#[from] ValidationError),
    #[error("p = {p} does not satisfy p = 1 (mod m) for m = {m}")]
    PrimeCongruence { p: u64, m: u64 },
    #[error("branch points must be pairwise distinct (t_{i} = t_{j} = {value})")]
    BranchNotDistinct { i: usize, j: usize, value: u64 },
    #[error("expected {expected} branch points, got {got}")]
    BranchCount { expected: usize, got: usize },
    #[error("branch point {value} is not a canonical residue mod {p}")]
    BranchOutOfRange { value: u64, p: u64 },
    #[error("operation requires numeric branch points")]
    NumericRequired,
    #[error("operation requires symbolic branch points")]
    SymbolicRequired,
    #[error("character index n = {n} out of range [1, {}]", .m - 1)]
    CharacterOutOfRange { n: u64, m: u64 },
    #[error("variable index {i} out of range [1, {n}]")]
    VariableOutOfRange { i: usize, n: usize },
    #[error("p^{k} exceeds the arithmetic gate 2^{gate_bits} (set {GATE_ENV_VAR} to raise it)")]
    GateExceeded { k: u64, gate_bits: u32 },
    #[error("Cartier working degree {degree} exceeds the cap {cap}; the prime is too large for the dense extraction")]
    DegreeCapExceeded { degree: u64, cap: u64 },
    #[error("point counts are inconsistent with a Weil L-polynomial: {reason}")]
    OracleInconsistency { reason: String },
    #[error("internal invariant violated in the Cartier computation: {0}")]
    Internal(String),
}
