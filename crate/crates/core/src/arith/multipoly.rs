//! Sparse multivariate polynomials in the branch coordinates `t_1..t_N`
//! over `F_p`, with a fixed variable order and graded-lexicographic term
//! order so printing and hashing are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::poly::CoeffRing;
use super::{ArithError, FpElt, PrimeField};

/// Ring context: the base prime field and the number of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MpCtx {
    pub field: PrimeField,
    pub arity: usize,
}

impl MpCtx {
    pub fn new(field: PrimeField, arity: usize) -> Self {
        MpCtx { field, arity }
    }
}

/// Exponent vector with graded-lexicographic order (total degree first,
/// then lexicographic on the exponents).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `t_1..t_N`: a map from exponent vectors to nonzero
/// field elements. Exponent vectors always have length `arity`.
#[derive(Clone, PartialEq)]
pub struct MultiPoly {
    ctx: MpCtx,
    terms: BTreeMap<Monomial, FpElt>,
}

impl MultiPoly {
    pub fn zero(ctx: MpCtx) -> Self {
        MultiPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: MpCtx, c: FpElt) -> Self {
        let mut p = MultiPoly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; ctx.arity]), c);
        }
        p
    }

    /// The variable `t_i`, 0-based index.
    pub fn var(ctx: MpCtx, i: usize) -> Self {
        assert!(i < ctx.arity, "variable index {i} out of range");
        let mut exps = vec![0; ctx.arity];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), ctx.field.one());
        MultiPoly { ctx, terms }
    }

    /// `t_i^e` as a single term.
    pub fn var_pow(ctx: MpCtx, i: usize, e: u32) -> Self {
        assert!(i < ctx.arity, "variable index {i} out of range");
        let mut exps = vec![0; ctx.arity];
        exps[i] = e;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), ctx.field.one());
        MultiPoly { ctx, terms }
    }

    pub fn mp_ctx(&self) -> MpCtx {
        self.ctx
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Terms in ascending graded-lex order as (exponent vector, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], FpElt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, m: Monomial, c: FpElt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.ctx, rhs.ctx, "mixed multivariate rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ctx, rhs.ctx, "mixed multivariate rings");
        let mut out = MultiPoly::zero(self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.insert_term(Monomial(exps), ca.mul(cb));
            }
        }
        out
    }

    /// Partial derivative with respect to `t_i` (0-based).
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.ctx.arity, "variable index {i} out of range");
        let field = self.ctx.field;
        let mut out = MultiPoly::zero(self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.insert_term(Monomial(exps), c.mul(&field.elt(e as u64)));
        }
        out
    }

    /// Evaluate at a full assignment `t_i -> assignment[i]`.
    pub fn eval(&self, assignment: &[FpElt]) -> Result<FpElt, ArithError> {
        if assignment.len() != self.ctx.arity {
            return Err(ArithError::AssignmentArity {
                expected: self.ctx.arity,
                got: assignment.len(),
            });
        }
        let field = self.ctx.field;
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut term = *c;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&assignment[i].pow(e as u64));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl CoeffRing for MultiPoly {
    type Ctx = MpCtx;

    fn ctx(&self) -> MpCtx {
        self.ctx
    }
    fn zero(ctx: &MpCtx) -> Self {
        MultiPoly::zero(*ctx)
    }
    fn one(ctx: &MpCtx) -> Self {
        MultiPoly::constant(*ctx, ctx.field.one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
    /// Units of `F_p[t_1..t_N]` are the nonzero constants.
    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if m.total_degree() != 0 {
            return None;
        }
        Some(MultiPoly::constant(self.ctx, c.inv()?))
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order, e.g. `3*t1^2*t3 + t2 + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("t{}", i + 1)),
                    _ => factors.push(format!("t{}^{}", i + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", c.value())?;
            } else if c.value() == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c.value(), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}
