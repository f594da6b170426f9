//! Prime field `F_p` for word-sized primes `p <= 2^31 - 1`.
//!
//! Elements carry their modulus, so values from different fields cannot be
//! mixed silently (mixing panics). All products go through 128-bit
//! intermediates before reduction.

use std::fmt;

use super::ArithError;

const MAX_P: u64 = (1 << 31) - 1;

/// A validated prime field. Construction checks primality once; elements are
/// made through [`PrimeField::elt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p > MAX_P {
            return Err(ArithError::ModulusTooLarge { p });
        }
        if !is_prime(p) {
            return Err(ArithError::NotPrime { p });
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The canonical representative of `v` in `[0, p-1]`.
    pub fn elt(&self, v: u64) -> FpElt {
        FpElt {
            p: self.p,
            value: v % self.p,
        }
    }

    /// Element from a signed integer (reduces negatives correctly).
    pub fn elt_i64(&self, v: i64) -> FpElt {
        let p = self.p as i64;
        FpElt {
            p: self.p,
            value: v.rem_euclid(p) as u64,
        }
    }

    pub fn zero(&self) -> FpElt {
        self.elt(0)
    }

    pub fn one(&self) -> FpElt {
        self.elt(1)
    }
}

/// An element of `F_p` in canonical form `0 <= value < p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElt {
    p: u64,
    value: u64,
}

impl FpElt {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, rhs: &FpElt) {
        assert_eq!(self.p, rhs.p, "mixed prime fields: {} vs {}", self.p, rhs.p);
    }

    pub fn add(&self, rhs: &FpElt) -> FpElt {
        self.check(rhs);
        let mut v = self.value + rhs.value;
        if v >= self.p {
            v -= self.p;
        }
        FpElt { p: self.p, value: v }
    }

    pub fn sub(&self, rhs: &FpElt) -> FpElt {
        self.check(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        FpElt { p: self.p, value: v }
    }

    pub fn neg(&self) -> FpElt {
        let v = if self.value == 0 { 0 } else { self.p - self.value };
        FpElt { p: self.p, value: v }
    }

    pub fn mul(&self, rhs: &FpElt) -> FpElt {
        self.check(rhs);
        let v = (self.value as u128 * rhs.value as u128 % self.p as u128) as u64;
        FpElt { p: self.p, value: v }
    }

    pub fn pow(&self, mut e: u64) -> FpElt {
        let mut base = *self;
        let mut acc = FpElt { p: self.p, value: 1 % self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<FpElt> {
        if self.value == 0 {
            None
        } else {
            // Fermat: value^(p-2)
            Some(self.pow(self.p - 2))
        }
    }
}

impl fmt::Debug for FpElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FpElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Modular exponentiation on bare u64 words.
pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The witness set {2, 3, 5, 7} is exact for all
/// n < 3,215,031,751, which covers the supported range p <= 2^31 - 1.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
