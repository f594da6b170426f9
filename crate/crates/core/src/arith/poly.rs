//! Dense univariate polynomials over an abstract coefficient ring.
//!
//! The same type serves two instantiations: `DensePoly<FpElt>` for numeric
//! work and `DensePoly<MultiPoly>` for polynomials in `x` whose coefficients
//! are polynomials in the branch coordinates.

use super::{ArithError, FpElt, MpCtx, MultiPoly, PrimeField};

/// Coefficient ring abstraction. `Ctx` carries whatever is needed to build
/// constants (the prime for `F_p`, prime plus arity for multivariate rings);
/// the zero polynomial stores only the context.
pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug {
    type Ctx: Clone + PartialEq + std::fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse when one exists in the ring.
    fn try_inv(&self) -> Option<Self>;
}

impl CoeffRing for FpElt {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        self.field()
    }
    fn zero(ctx: &PrimeField) -> Self {
        ctx.zero()
    }
    fn one(ctx: &PrimeField) -> Self {
        ctx.one()
    }
    fn is_zero(&self) -> bool {
        FpElt::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        FpElt::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FpElt::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        FpElt::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FpElt::mul(self, rhs)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

/// Polynomial in one variable, coefficients indexed by degree, leading
/// coefficient nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq)]
pub struct DensePoly<C: CoeffRing> {
    ctx: C::Ctx,
    coeffs: Vec<C>,
}

impl<C: CoeffRing> DensePoly<C> {
    pub fn zero(ctx: C::Ctx) -> Self {
        DensePoly { ctx, coeffs: Vec::new() }
    }

    pub fn one(ctx: C::Ctx) -> Self {
        let c = C::one(&ctx);
        DensePoly { ctx, coeffs: vec![c] }
    }

    pub fn constant(c: C) -> Self {
        let ctx = c.ctx();
        let mut p = DensePoly { ctx, coeffs: vec![c] };
        p.trim();
        p
    }

    /// Build from coefficients (index = degree); trailing zeros are trimmed.
    pub fn from_coeffs(ctx: C::Ctx, coeffs: Vec<C>) -> Self {
        let mut p = DensePoly { ctx, coeffs };
        p.trim();
        p
    }

    /// The monic linear factor `x - t`.
    pub fn linear_root(t: &C) -> Self {
        let ctx = t.ctx();
        DensePoly {
            coeffs: vec![t.neg(), C::one(&ctx)],
            ctx,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(|| C::zero(&self.ctx))
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&rhs.coeff(k)));
        }
        Self::from_coeffs(self.ctx.clone(), out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).sub(&rhs.coeff(k)));
        }
        Self::from_coeffs(self.ctx.clone(), out)
    }

    pub fn neg(&self) -> Self {
        DensePoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.ctx.clone());
        }
        let mut out = vec![C::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(self.ctx.clone(), out)
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::from_coeffs(
            self.ctx.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![C::zero(&self.ctx); k];
        out.extend(self.coeffs.iter().cloned());
        DensePoly { ctx: self.ctx.clone(), coeffs: out }
    }

    /// `self^e` by binary exponentiation, with the convention `0^0 = 1`.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.ctx.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division: returns `q` with `self = q * g`, or an
    /// `InexactDivision` error carrying the remainder. Requires the leading
    /// coefficient of `g` to be invertible (always the case over a field or
    /// for a monic divisor).
    pub fn divexact(&self, g: &Self) -> Result<Self, ArithError>
    where
        C: std::fmt::Display,
    {
        if g.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let lead = g.coeffs.last().unwrap();
        let lead_inv = lead.try_inv().ok_or_else(|| ArithError::NonInvertibleLeading {
            lead: lead.to_string(),
        })?;
        let dg = g.degree().unwrap();
        let mut rem = self.clone();
        let mut q = vec![C::zero(&self.ctx); self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let factor = rem.coeffs.last().unwrap().mul(&lead_inv);
            let k = dr - dg;
            // rem -= factor * x^k * g
            let mut new_coeffs = rem.coeffs.clone();
            for (j, b) in g.coeffs.iter().enumerate() {
                new_coeffs[k + j] = new_coeffs[k + j].sub(&factor.mul(b));
            }
            rem = Self::from_coeffs(self.ctx.clone(), new_coeffs);
            debug_assert!(rem.degree().is_none_or(|d| d < dr));
            q[k] = factor;
        }
        if !rem.is_zero() {
            return Err(ArithError::InexactDivision {
                remainder: rem.to_display_string(),
            });
        }
        Ok(Self::from_coeffs(self.ctx.clone(), q))
    }

    fn to_display_string(&self) -> String
    where
        C: std::fmt::Display,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let m = match k {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{k}"),
            };
            parts.push(m);
        }
        parts.join(" + ")
    }
}

impl<C: CoeffRing + std::fmt::Display> std::fmt::Display for DensePoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_display_string())
    }
}

impl<C: CoeffRing> std::fmt::Debug for DensePoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DensePoly").field("coeffs", &self.coeffs).finish()
    }
}

impl DensePoly<FpElt> {
    /// Horner evaluation.
    pub fn eval(&self, x: &FpElt) -> FpElt {
        let mut acc = x.field().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

/// Apply the evaluation homomorphism `t_i -> assignment[i]` to every
/// coefficient of a polynomial in `x` with multivariate coefficients.
pub fn specialize(
    f: &DensePoly<MultiPoly>,
    assignment: &[FpElt],
) -> Result<DensePoly<FpElt>, ArithError> {
    let ctx: &MpCtx = f.ctx();
    if assignment.len() != ctx.arity {
        return Err(ArithError::AssignmentArity {
            expected: ctx.arity,
            got: assignment.len(),
        });
    }
    let field = ctx.field;
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| c.eval(assignment))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DensePoly::from_coeffs(field, coeffs))
}
