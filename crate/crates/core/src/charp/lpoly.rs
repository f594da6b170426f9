//! L-polynomial reconstruction from point counts, and the p-rank it
//! implies.
//!
//! `L(T) = prod_{i=1..2g} (1 - alpha_i T)` is pinned down by the counts
//! `N_1..N_g` through the power sums `s_k = p^k + 1 - N_k` (Newton's
//! identities give `c_1..c_g`) and the functional equation
//! `c_{2g-j} = p^{g-j} c_j` (the rest). Every division that must be exact
//! and every Weil bound is checked; a failure is reported as an oracle
//! inconsistency, i.e. a counting bug, never silently absorbed.

use super::count::count_points;
use super::{gate_bits, CharpContext, CharpError};

/// Degree-2g integer polynomial `L(T) = sum_j c_j T^j` with `c_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    coefficients: Vec<i128>,
    p: u64,
    genus: u64,
}

impl LPolynomial {
    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// `L(T) = p^g T^{2g} L(1/(pT))`, coefficient-wise.
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus as usize;
        (0..=g).all(|j| {
            let scale = (self.p as i128).pow((g - j) as u32);
            self.coefficients[2 * g - j] == scale * self.coefficients[j]
        })
    }

    /// Power sum `s_k` of the reciprocal roots, from the coefficient
    /// recurrences.
    fn power_sum(&self, k: usize) -> i128 {
        let deg = 2 * self.genus as usize;
        let mut s = vec![0i128; k + 1];
        for j in 1..=k {
            let mut t = if j <= deg {
                -(j as i128) * self.coefficients[j]
            } else {
                0
            };
            for i in 1..j.min(deg + 1) {
                t -= self.coefficients[i] * s[j - i];
            }
            s[j] = t;
        }
        s[k]
    }

    /// The count of rational points over `F_{p^k}` implied by `L`.
    pub fn predicted_count(&self, k: u64) -> i128 {
        (self.p as i128).pow(k as u32) + 1 - self.power_sum(k as usize)
    }
}

/// Largest `j` with `c_j != 0 (mod p)`: the p-rank of the Jacobian.
pub fn p_rank_from_l(l: &LPolynomial) -> u64 {
    let p = l.p as i128;
    l.coefficients
        .iter()
        .rposition(|c| c.rem_euclid(p) != 0)
        .expect("c_0 = 1 is a unit") as u64
}

/// Reconstruct the L-polynomial of the reduced curve from the counts
/// `N_1..N_g`.
pub fn l_polynomial(ctx: &CharpContext) -> Result<LPolynomial, CharpError> {
    let p = ctx.p();
    let g = ctx.genus();
    let bits = gate_bits();
    if g > 0 {
        match p.checked_pow(g as u32) {
            Some(q) if q <= (1u64 << bits) => {}
            _ => return Err(CharpError::GateExceeded { k: g, gate_bits: bits }),
        }
    }

    let mut power_sums = vec![0i128; g as usize + 1];
    for k in 1..=g {
        let n_k = count_points(ctx, k)? as i128;
        let q_k = (p as i128).pow(k as u32);
        let s = q_k + 1 - n_k;
        check_weil(s, g, p, k)?;
        power_sums[k as usize] = s;
    }

    let deg = 2 * g as usize;
    let mut c = vec![0i128; deg + 1];
    c[0] = 1;
    for j in 1..=g as usize {
        let mut t = 0i128;
        for i in 0..j {
            t -= c[i] * power_sums[j - i];
        }
        if t % j as i128 != 0 {
            return Err(CharpError::OracleInconsistency {
                reason: format!("Newton identity gives non-integer coefficient c_{j} = {t}/{j}"),
            });
        }
        c[j] = t / j as i128;
    }
    for j in 0..g as usize {
        c[deg - j] = (p as i128).pow((g as usize - j) as u32) * c[j];
    }

    let l = LPolynomial { coefficients: c, p, genus: g };
    // the extended power sums must also respect the root bound |alpha| = sqrt(p)
    for k in g + 1..=2 * g {
        check_weil(l.power_sum(k as usize), g, p, k)?;
    }
    debug_assert!(l.functional_equation_holds());
    Ok(l)
}

/// `|s_k| <= 2g p^{k/2}`, squared to stay in exact integers.
fn check_weil(s: i128, g: u64, p: u64, k: u64) -> Result<(), CharpError> {
    let bound_ok = s
        .checked_mul(s)
        .map(|s2| s2 <= 4 * (g * g) as i128 * (p as i128).pow(k as u32))
        .unwrap_or(false);
    if bound_ok {
        Ok(())
    } else {
        Err(CharpError::OracleInconsistency {
            reason: format!("power sum s_{k} = {s} violates the Weil bound 2g p^(k/2) with g = {g}, p = {p}"),
        })
    }
}
