//! Small dense matrices over `F_p`: just enough linear algebra for stable
//! ranks of Cartier blocks.

use crate::arith::{FpElt, PrimeField};

use super::cartier::cartier_matrix_numeric;
use super::{CharpContext, CharpError};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct MatFp {
    size: usize,
    data: Vec<FpElt>,
}

impl MatFp {
    pub fn from_entries(size: usize, data: Vec<FpElt>) -> Self {
        assert_eq!(data.len(), size * size);
        MatFp { size, data }
    }

    fn at(&self, r: usize, c: usize) -> FpElt {
        self.data[r * self.size + c]
    }

    pub fn mul(&self, rhs: &MatFp, field: PrimeField) -> MatFp {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = vec![field.zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = out[r * n + c].add(&a.mul(&rhs.at(k, c)));
                }
            }
        }
        MatFp { size: n, data: out }
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.size;
        let mut m: Vec<FpElt> = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| !m[r * n + col].is_zero());
            let Some(pivot) = pivot else { continue };
            for c in 0..n {
                m.swap(pivot * n + c, rank * n + c);
            }
            let inv = m[rank * n + col].inv().expect("pivot is nonzero");
            for r in rank + 1..n {
                let factor = m[r * n + col].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor.mul(&m[rank * n + c]);
                    m[r * n + c] = m[r * n + c].sub(&sub);
                }
            }
            rank += 1;
            if rank == n {
                break;
            }
        }
        rank
    }
}

/// p-rank of the Jacobian: the sum over eigenspaces of the stable rank of
/// the Cartier block. Over the prime field the inverse-Frobenius twist is
/// trivial, so the stable rank is the rank of the `d_n`-th matrix power.
pub fn p_rank(ctx: &CharpContext) -> Result<u64, CharpError> {
    ctx.numeric_branch()?;
    let field = ctx.field();
    let mut total = 0u64;
    for n in 1..ctx.m() {
        let block = cartier_matrix_numeric(ctx, n)?;
        if block.size == 0 {
            continue;
        }
        let mat = MatFp::from_entries(block.size, block.entries);
        let mut power = mat.clone();
        for _ in 1..block.size {
            power = power.mul(&mat, field);
        }
        total += power.rank() as u64;
    }
    Ok(total)
}
