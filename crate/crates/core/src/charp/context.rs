//! Reduction data for a cyclic cover in characteristic p.

use crate::arith::{gcd, is_prime, ArithError, PrimeField};
use crate::monodromy::{eigenspace_dims_of, genus_of, EigenspaceSignature, MonodromyDatum};

use super::CharpError;

/// Branch-point data: numeric points of `F_p` or the symbolic coordinates
/// `t_1..t_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    Numeric(Vec<u64>),
    Symbolic,
}

/// A cyclic cover `y^m = prod (x - t_i)^{a_i}` reduced mod a prime
/// `p = 1 (mod m)`.
///
/// The cover may carry an extra branch point at infinity (`a_inf != 0`);
/// this `allow_infinity` mode exists for classical cross-checks such as the
/// 3-point Legendre family and is never produced from a validated
/// [`MonodromyDatum`], whose total monodromy is trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharpContext {
    m: u64,
    a: Vec<u64>,
    a_inf: u64,
    field: PrimeField,
    branch: Branch,
}

impl CharpContext {
    /// Context for a validated datum (no branching over infinity).
    pub fn new(datum: &MonodromyDatum, p: u64, branch: Branch) -> Result<Self, CharpError> {
        Self::build(datum.m(), datum.local_monodromies().to_vec(), 0, p, branch)
    }

    /// Context from raw `(m, a)` with the implied branch point at infinity
    /// appended: `a_inf = (-sum a_i) mod m`. When the sum is already
    /// divisible by `m` this is the ordinary unbranched-at-infinity model.
    pub fn with_infinity(m: u64, a: &[u64], p: u64, branch: Branch) -> Result<Self, CharpError> {
        if m < 2 {
            return Err(CharpError::Datum(
                crate::monodromy::ValidationError::OrderTooSmall { m },
            ));
        }
        for (index, &value) in a.iter().enumerate() {
            if value == 0 || value >= m {
                return Err(CharpError::Datum(
                    crate::monodromy::ValidationError::EntryOutOfRange {
                        index: index + 1,
                        value,
                        m,
                    },
                ));
            }
        }
        let sum: u64 = a.iter().sum();
        let a_inf = (m - sum % m) % m;
        let g = a.iter().fold(m, |acc, &v| gcd(acc, v));
        // a_inf is a multiple of gcd(m, a), so it never restores connectivity
        if g != 1 {
            return Err(CharpError::Datum(
                crate::monodromy::ValidationError::GcdNotOne { gcd: g },
            ));
        }
        Self::build(m, a.to_vec(), a_inf, p, branch)
    }

    fn build(m: u64, a: Vec<u64>, a_inf: u64, p: u64, branch: Branch) -> Result<Self, CharpError> {
        if !is_prime(p) || p > (1 << 31) - 1 {
            return Err(CharpError::Arith(ArithError::NotPrime { p }));
        }
        if p % m != 1 {
            return Err(CharpError::PrimeCongruence { p, m });
        }
        if let Branch::Numeric(ts) = &branch {
            if ts.len() != a.len() {
                return Err(CharpError::BranchCount { expected: a.len(), got: ts.len() });
            }
            for &t in ts {
                if t >= p {
                    return Err(CharpError::BranchOutOfRange { value: t, p });
                }
            }
            for i in 0..ts.len() {
                for j in i + 1..ts.len() {
                    if ts[i] == ts[j] {
                        return Err(CharpError::BranchNotDistinct {
                            i: i + 1,
                            j: j + 1,
                            value: ts[i],
                        });
                    }
                }
            }
        }
        let field = PrimeField::new(p)?;
        Ok(CharpContext { m, a, a_inf, field, branch })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn branch(&self) -> &Branch {
        &self.branch
    }

    /// Finite local monodromies (excluding any point at infinity).
    pub fn finite_monodromies(&self) -> &[u64] {
        &self.a
    }

    /// Monodromy at infinity; 0 when infinity is not a branch point.
    pub fn infinity_monodromy(&self) -> u64 {
        self.a_inf
    }

    /// Number of finite branch points.
    pub fn finite_branch_count(&self) -> usize {
        self.a.len()
    }

    pub fn genus(&self) -> u64 {
        genus_of(self.m, &self.a, self.a_inf)
    }

    /// Eigenspace dimensions including the contribution of the infinity
    /// branch point when present.
    pub fn eigenspace_dims(&self) -> EigenspaceSignature {
        eigenspace_dims_of(self.m, &self.a, self.a_inf)
    }

    pub fn numeric_branch(&self) -> Result<&[u64], CharpError> {
        match &self.branch {
            Branch::Numeric(ts) => Ok(ts),
            Branch::Symbolic => Err(CharpError::NumericRequired),
        }
    }

    pub(crate) fn require_symbolic(&self) -> Result<(), CharpError> {
        match self.branch {
            Branch::Symbolic => Ok(()),
            Branch::Numeric(_) => Err(CharpError::SymbolicRequired),
        }
    }

    pub(crate) fn check_character(&self, n: u64) -> Result<(), CharpError> {
        if n == 0 || n >= self.m {
            Err(CharpError::CharacterOutOfRange { n, m: self.m })
        } else {
            Ok(())
        }
    }
}

/// Basis of the character-n eigenspace of holomorphic differentials:
/// `w_{n,r} = x^{r-1} g_n(x) dx / y^n` for `r = 1..d_n`, with
/// `g_n(x) = prod_i (x - t_i)^{floor(n a_i / m)}` over the finite branch
/// points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenBasis {
    pub n: u64,
    /// Exponent of `(x - t_i)` in `g_n`, per finite branch point.
    pub g_exponents: Vec<u64>,
    /// Eigenspace dimension `d_n` (the number of basis forms).
    pub dim: u64,
}

/// Exponent data of the character-n eigenspace basis.
pub fn eigen_basis(ctx: &CharpContext, n: u64) -> Result<EigenBasis, CharpError> {
    ctx.check_character(n)?;
    let m = ctx.m();
    let g_exponents = ctx.a.iter().map(|&ai| n * ai / m).collect();
    let dim = ctx.eigenspace_dims().dim(n);
    Ok(EigenBasis { n, g_exponents, dim })
}
