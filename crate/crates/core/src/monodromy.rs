//! Monodromy data for cyclic covers of the projective line.
//!
//! A family of covers `y^m = prod_{i=1..N} (x - t_i)^{a_i}` is specified by
//! the covering group order `m` and the local monodromies `a = (a_1..a_N)`,
//! with the branch points `t_i` varying. Data are normalized so that the
//! total monodromy is trivial (`sum a_i = 0 mod m`, no branching over
//! infinity) and the cover is connected (`gcd(m, a_1..a_N) = 1`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::gcd;

/// Constraint violations reported by [`MonodromyDatum::new`]. Each variant
/// names the violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("covering group order m must be at least 2 (got {m})")]
    OrderTooSmall { m: u64 },
    #[error("fewer than 3 branch points (N = {n})")]
    TooFewBranchPoints { n: usize },
    #[error("local monodromy a_{index} = {value} out of range [1, {}]", .m - 1)]
    EntryOutOfRange { index: usize, value: u64, m: u64 },
    #[error("sum of local monodromies not divisible by m (sum = {sum}, m = {m})")]
    SumNotDivisible { sum: u64, m: u64 },
    #[error("gcd(m, a_1..a_N) = {gcd} != 1, the cover is disconnected")]
    GcdNotOne { gcd: u64 },
    #[error("cannot parse monodromy datum from {input:?}, expected `m=M a=a1,a2,...`")]
    Parse { input: String },
}

/// The family parameter: covering group `Z/m` and local monodromies
/// `(a_1..a_N)`. Constructed only through [`MonodromyDatum::new`], which
/// enforces all three invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonodromyDatum {
    m: u64,
    a: Vec<u64>,
}

impl MonodromyDatum {
    /// Validate `(m, a)`: `N >= 3`, all entries in `[1, m-1]`,
    /// `sum a_i = 0 (mod m)`, and `gcd(m, a_1..a_N) = 1`.
    pub fn new(m: u64, a: Vec<u64>) -> Result<Self, ValidationError> {
        if m < 2 {
            return Err(ValidationError::OrderTooSmall { m });
        }
        if a.len() < 3 {
            return Err(ValidationError::TooFewBranchPoints { n: a.len() });
        }
        for (index, &value) in a.iter().enumerate() {
            if value == 0 || value >= m {
                return Err(ValidationError::EntryOutOfRange { index: index + 1, value, m });
            }
        }
        let sum: u64 = a.iter().sum();
        if !sum.is_multiple_of(m) {
            return Err(ValidationError::SumNotDivisible { sum, m });
        }
        let g = a.iter().fold(m, |acc, &v| gcd(acc, v));
        if g != 1 {
            return Err(ValidationError::GcdNotOne { gcd: g });
        }
        Ok(MonodromyDatum { m, a })
    }

    /// Internal constructor for data already known valid (unit multiples,
    /// permutations of valid data).
    pub(crate) fn new_unchecked(m: u64, a: Vec<u64>) -> Self {
        debug_assert!(MonodromyDatum::new(m, a.clone()).is_ok());
        MonodromyDatum { m, a }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn local_monodromies(&self) -> &[u64] {
        &self.a
    }

    /// Number of branch points `N`.
    pub fn branch_count(&self) -> usize {
        self.a.len()
    }

    /// `N = 3` families are single points of moduli (CM points); the
    /// classification excludes them.
    pub fn is_zero_dimensional(&self) -> bool {
        self.a.len() == 3
    }

    /// Genus of any member of the family, via Riemann-Hurwitz:
    /// `2g - 2 = -2m + sum_i (m - gcd(a_i, m))`.
    pub fn genus(&self) -> u64 {
        genus_of(self.m, &self.a, 0)
    }

    /// Eigenspace dimensions of the `Z/m`-action on holomorphic
    /// differentials: `d_n = (sum_i (n a_i mod m)) / m - 1` for
    /// `n = 1..m-1`.
    pub fn eigenspace_dims(&self) -> EigenspaceSignature {
        eigenspace_dims_of(self.m, &self.a, 0)
    }

    /// Canonical representative of the equivalence class of `self` under
    /// permuting branch points and replacing the generator of `Z/m`
    /// (`a -> u*a mod m` for units `u`): among all unit multiples sorted
    /// ascending, the lexicographically smallest.
    pub fn normalize(&self) -> MonodromyDatum {
        let mut best: Option<Vec<u64>> = None;
        for u in units(self.m) {
            let mut cand: Vec<u64> = self.a.iter().map(|&v| v * u % self.m).collect();
            cand.sort_unstable();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        MonodromyDatum::new_unchecked(self.m, best.unwrap())
    }

    /// True iff the two data generate isomorphic families (same `m` and same
    /// canonical form).
    pub fn is_equivalent(&self, other: &MonodromyDatum) -> bool {
        self.m == other.m && self.normalize() == other.normalize()
    }
}

impl fmt::Display for MonodromyDatum {
    /// Canonical textual form, e.g. `m=6 a=1,1,1,3`. Round-trips with the
    /// parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} a=", self.m)?;
        for (i, v) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for MonodromyDatum {
    type Err = ValidationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, a) = parse_raw_datum(s)?;
        MonodromyDatum::new(m, a)
    }
}

/// Parse the textual datum syntax `m=M a=a1,a2,...` without validating the
/// monodromy invariants (the characteristic-p layer accepts data with
/// nontrivial total monodromy in its `allow_infinity` mode). Whitespace is
/// ignored everywhere.
pub fn parse_raw_datum(s: &str) -> Result<(u64, Vec<u64>), ValidationError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || ValidationError::Parse { input: s.to_string() };
    let rest = compact.strip_prefix("m=").ok_or_else(err)?;
    let a_pos = rest.find("a=").ok_or_else(err)?;
    let m: u64 = rest[..a_pos].parse().map_err(|_| err())?;
    let list = &rest[a_pos + 2..];
    if list.is_empty() {
        return Err(err());
    }
    let a = list
        .split(',')
        .map(|tok| tok.parse::<u64>().map_err(|_| err()))
        .collect::<Result<Vec<u64>, _>>()?;
    Ok((m, a))
}

/// The holomorphic-differential eigenspace dimensions `(d_1..d_{m-1})` of a
/// datum, together with the genus `g = sum d_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EigenspaceSignature {
    m: u64,
    d: Vec<u64>,
    genus: u64,
}

impl EigenspaceSignature {
    pub fn m(&self) -> u64 {
        self.m
    }

    /// `d_n` for `1 <= n <= m-1`.
    pub fn dim(&self, n: u64) -> u64 {
        assert!(n >= 1 && n < self.m, "character index {n} out of range");
        self.d[(n - 1) as usize]
    }

    /// The vector `(d_1..d_{m-1})`.
    pub fn dims(&self) -> &[u64] {
        &self.d
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Assemble a signature directly from a dimension vector. Used by the
    /// tests that recompute with the opposite character convention.
    pub fn from_dims(m: u64, d: Vec<u64>) -> Self {
        assert_eq!(d.len() as u64, m - 1);
        let genus = d.iter().sum();
        EigenspaceSignature { m, d, genus }
    }
}

/// Units of `Z/m` in ascending order.
pub fn units(m: u64) -> impl Iterator<Item = u64> {
    (1..m.max(2)).filter(move |&u| gcd(u, m) == 1)
}

/// Genus shared by the validated datum and the extended (branched at
/// infinity) data used in the characteristic-p layer; `a_inf = 0` means
/// infinity is not a branch point.
pub(crate) fn genus_of(m: u64, a: &[u64], a_inf: u64) -> u64 {
    let mut s: i64 = a.iter().map(|&v| (m - gcd(v, m)) as i64).sum();
    if a_inf > 0 {
        s += (m - gcd(a_inf, m)) as i64;
    }
    let two_g = s - 2 * m as i64 + 2;
    assert!(two_g >= 0 && two_g % 2 == 0, "Riemann-Hurwitz parity violated");
    (two_g / 2) as u64
}

pub(crate) fn eigenspace_dims_of(m: u64, a: &[u64], a_inf: u64) -> EigenspaceSignature {
    let mut d = Vec::with_capacity((m - 1) as usize);
    for n in 1..m {
        let mut residue_sum: u64 = a.iter().map(|&v| n * v % m).sum();
        if a_inf > 0 {
            residue_sum += n * a_inf % m;
        }
        assert_eq!(residue_sum % m, 0, "eigenspace dimension formula: division not exact");
        let q = residue_sum / m;
        assert!(q >= 1, "negative eigenspace dimension");
        d.push(q - 1);
    }
    let genus: u64 = d.iter().sum();
    assert_eq!(genus, genus_of(m, a, a_inf), "eigenspace dimensions do not sum to the genus");
    EigenspaceSignature { m, d, genus }
}

/// Visit every valid datum with `2 <= m <= m_max`, `3 <= N <= n_max`, local
/// monodromies as a non-decreasing sequence (one representative per
/// multiset, not per equivalence class). Used by exhaustive sweeps and as a
/// brute-force oracle for the pruned classification search.
pub fn for_each_valid_datum<F: FnMut(&MonodromyDatum)>(m_max: u64, n_max: usize, mut f: F) {
    for m in 2..=m_max {
        for n in 3..=n_max {
            let mut stack = Vec::with_capacity(n);
            scan_multisets(m, n, 1, 0, m, &mut stack, &mut f);
        }
    }
}

fn scan_multisets<F: FnMut(&MonodromyDatum)>(
    m: u64,
    n: usize,
    min_v: u64,
    sum: u64,
    gcd_acc: u64,
    stack: &mut Vec<u64>,
    f: &mut F,
) {
    if stack.len() == n {
        if sum.is_multiple_of(m) && gcd_acc == 1 {
            f(&MonodromyDatum::new_unchecked(m, stack.clone()));
        }
        return;
    }
    for v in min_v..m {
        stack.push(v);
        scan_multisets(m, n, v, sum + v, gcd(gcd_acc, v), stack, f);
        stack.pop();
    }
}
