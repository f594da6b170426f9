//! Cartier-Manin matrices of cyclic covers, one block per character
//! eigenspace.
//!
//! For `p = 1 (mod m)` the Cartier operator maps the character-n eigenspace
//! to itself. In the basis `w_{n,r} = x^{r-1} g_n(x) dx/y^n` its matrix is
//! computed per column `r` as:
//!
//! 1. form `Phi_{n,r}(x) = x^{r-1} prod_i (x - t_i)^{e_{n,i}}` with
//!    `e_{n,i} = q_i p + s_i (p-1)/m`, where `n a_i = q_i m + s_i`,
//!    `0 <= s_i < m`;
//! 2. extract `Psi(x) = sum_k (coeff of x^{kp-1} in Phi) x^{k-1}`;
//! 3. exact-divide `Psi` by `g_n^(p)(x) = prod_i (x - t_i^p)^{q_i}`;
//!    the quotient's coefficients on `x^{s-1}`, `s = 1..d_n`, form the
//!    column.
//!
//! The recorded matrix `A` represents the sigma^{-1}-linear operator
//! `C(w_r) = sum_s sigma^{-1}(A_{s,r}) w_s`; over the prime field the twist
//! is trivial and `A` is the Cartier-Manin matrix itself.

use crate::arith::{CoeffRing, DensePoly, FpElt, MpCtx, MultiPoly};

use super::context::eigen_basis;
use super::{CharpContext, CharpError};

/// Marker recording the Frobenius twist of the represented operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semilinearity {
    /// sigma^{-1}-linear (Cartier / inverse-Frobenius twisted).
    InverseFrobenius,
}

/// One eigenspace block of the Cartier matrix: a `size x size` matrix in
/// row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CartierBlock<C> {
    pub n: u64,
    pub size: usize,
    pub entries: Vec<C>,
    pub semilinearity: Semilinearity,
}

impl<C> CartierBlock<C> {
    pub fn entry(&self, row: usize, col: usize) -> &C {
        &self.entries[row * self.size + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C]> {
        self.entries.chunks(self.size.max(1))
    }
}

/// Working-degree cap on the extraction polynomial Phi. Degrees scale with
/// p, so an oversized prime is refused up front instead of exhausting
/// memory on a dense polynomial.
pub const MAX_WORKING_DEGREE: u64 = 1 << 20;

/// Shared column computation; `ts` are the branch points as ring elements
/// and `ts_p` their p-th powers (equal to `ts` over the prime field).
fn cartier_block_generic<C>(
    ctx: &CharpContext,
    n: u64,
    ts: &[C],
    ts_p: &[C],
    ring: C::Ctx,
) -> Result<CartierBlock<C>, CharpError>
where
    C: CoeffRing + std::fmt::Display,
{
    let m = ctx.m();
    let p = ctx.p();
    let basis = eigen_basis(ctx, n)?;
    let dim = basis.dim as usize;

    if dim == 0 {
        return Ok(CartierBlock {
            n,
            size: 0,
            entries: Vec::new(),
            semilinearity: Semilinearity::InverseFrobenius,
        });
    }

    // (p-1)/m is an integer by the congruence hypothesis
    assert_eq!((p - 1) % m, 0);
    let step = (p - 1) / m;

    let phi_degree: u64 = dim as u64 - 1
        + ctx
            .finite_monodromies()
            .iter()
            .map(|&ai| (n * ai / m) * p + (n * ai % m) * step)
            .sum::<u64>();
    if phi_degree > MAX_WORKING_DEGREE {
        return Err(CharpError::DegreeCapExceeded {
            degree: phi_degree,
            cap: MAX_WORKING_DEGREE,
        });
    }

    let mut base = DensePoly::one(ring.clone());
    let mut g_p = DensePoly::one(ring.clone());
    for (i, &ai) in ctx.finite_monodromies().iter().enumerate() {
        let q = n * ai / m;
        let s = n * ai % m;
        let e = q * p + s * step;
        base = base.mul(&DensePoly::linear_root(&ts[i]).pow(e));
        if q > 0 {
            g_p = g_p.mul(&DensePoly::linear_root(&ts_p[i]).pow(q));
        }
    }

    let mut entries = vec![C::zero(&ring); dim * dim];
    for r in 1..=dim {
        // Phi = x^{r-1} * base; the shift only renumbers coefficients
        let phi = base.shift_up(r - 1);
        let deg = phi.degree().unwrap_or(0);
        let mut psi_coeffs = Vec::new();
        let mut k = 1usize;
        while k * (p as usize) <= deg + 1 {
            psi_coeffs.push(phi.coeff(k * p as usize - 1));
            k += 1;
        }
        let psi = DensePoly::from_coeffs(ring.clone(), psi_coeffs);
        let quotient = psi.divexact(&g_p)?;
        if quotient.degree().is_some_and(|d| d >= dim) {
            return Err(CharpError::Internal(format!(
                "Cartier image of basis form {r} in eigenspace {n} has degree {} >= d_n = {dim}",
                quotient.degree().unwrap()
            )));
        }
        for s in 1..=dim {
            entries[(s - 1) * dim + (r - 1)] = quotient.coeff(s - 1);
        }
    }

    Ok(CartierBlock {
        n,
        size: dim,
        entries,
        semilinearity: Semilinearity::InverseFrobenius,
    })
}

/// Cartier-Manin block for numeric branch points. Over `F_p` the twist is
/// trivial (`t^p = t`), so this is the honest matrix of the Cartier
/// operator on the eigenspace.
pub fn cartier_matrix_numeric(
    ctx: &CharpContext,
    n: u64,
) -> Result<CartierBlock<FpElt>, CharpError> {
    let ts_raw = ctx.numeric_branch()?.to_vec();
    let field = ctx.field();
    let ts: Vec<FpElt> = ts_raw.iter().map(|&t| field.elt(t)).collect();
    cartier_block_generic(ctx, n, &ts, &ts, field)
}

/// Cartier block with symbolic branch points: entries are polynomials in
/// `t_1..t_N` over `F_p`. The divisor uses the twisted points `t_i^p`,
/// matching the sigma^{-1}-linear bookkeeping; specializing at an
/// `F_p`-assignment reproduces the numeric matrix.
pub fn cartier_matrix_symbolic(
    ctx: &CharpContext,
    n: u64,
) -> Result<CartierBlock<MultiPoly>, CharpError> {
    ctx.require_symbolic()?;
    let ring = MpCtx::new(ctx.field(), ctx.finite_branch_count());
    let p = ctx.p();
    let ts: Vec<MultiPoly> = (0..ring.arity).map(|i| MultiPoly::var(ring, i)).collect();
    let ts_p: Vec<MultiPoly> = (0..ring.arity)
        .map(|i| MultiPoly::var_pow(ring, i, p as u32))
        .collect();
    cartier_block_generic(ctx, n, &ts, &ts_p, ring)
}

/// First-order variation of the symbolic Cartier block in the branch-point
/// direction `t_i` (1-based): the entrywise partial derivative.
pub fn hasse_witt_variation(
    ctx: &CharpContext,
    n: u64,
    i: usize,
) -> Result<CartierBlock<MultiPoly>, CharpError> {
    let block = cartier_matrix_symbolic(ctx, n)?;
    let vars = ctx.finite_branch_count();
    if i == 0 || i > vars {
        return Err(CharpError::VariableOutOfRange { i, n: vars });
    }
    Ok(CartierBlock {
        n: block.n,
        size: block.size,
        entries: block.entries.iter().map(|e| e.partial(i - 1)).collect(),
        semilinearity: block.semilinearity,
    })
}
