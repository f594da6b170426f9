//! Randomized algebra checks for the arithmetic kernel.

use proptest::prelude::*;

use specialis::arith::{specialize, DensePoly, FpElt, MpCtx, MultiPoly, PrimeField};

const SMALL_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn fp_poly(p: u64, coeffs: &[u64]) -> DensePoly<FpElt> {
    let f = PrimeField::new(p).unwrap();
    DensePoly::from_coeffs(f, coeffs.iter().map(|&c| f.elt(c)).collect())
}

fn arb_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(SMALL_PRIMES.to_vec())
}

fn arb_coeffs() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..100, 0..8)
}

/// Multivariate polynomial in `arity` variables built from random terms.
fn mp_from(ctx: MpCtx, terms: &[(Vec<u32>, u64)]) -> MultiPoly {
    let mut acc = MultiPoly::zero(ctx);
    for (exps, c) in terms {
        let mut term = MultiPoly::constant(ctx, ctx.field.elt(*c));
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term.mul(&MultiPoly::var_pow(ctx, i, e));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

fn arb_mp_terms() -> impl Strategy<Value = Vec<(Vec<u32>, u64)>> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, 3), 0u64..100),
        0..5,
    )
}

proptest! {
    #[test]
    fn distributivity(p in arb_prime(), a in arb_coeffs(), b in arb_coeffs(), c in arb_coeffs()) {
        let (f, g, h) = (fp_poly(p, &a), fp_poly(p, &b), fp_poly(p, &c));
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
    }

    #[test]
    fn divexact_recovers_factor(p in arb_prime(), a in arb_coeffs(), b in arb_coeffs()) {
        let f = fp_poly(p, &a);
        let g = fp_poly(p, &b);
        prop_assume!(!g.is_zero());
        prop_assert_eq!(f.mul(&g).divexact(&g).unwrap(), f);
    }

    #[test]
    fn frobenius_is_additive(p in prop::sample::select(vec![3u64, 5, 7]), a in arb_coeffs(), b in arb_coeffs()) {
        let f = fp_poly(p, &a);
        let g = fp_poly(p, &b);
        prop_assert_eq!(f.add(&g).pow(p), f.pow(p).add(&g.pow(p)));
    }

    #[test]
    fn pow_matches_repeated_multiplication(p in arb_prime(), a in arb_coeffs(), e in 0u64..6) {
        let f = fp_poly(p, &a);
        let mut expected = DensePoly::one(*f.ctx());
        for _ in 0..e {
            expected = expected.mul(&f);
        }
        prop_assert_eq!(f.pow(e), expected);
    }

    #[test]
    fn specialize_is_a_ring_homomorphism(
        p in prop::sample::select(vec![3u64, 5, 7, 13]),
        fa in arb_mp_terms(),
        fb in arb_mp_terms(),
        ga in arb_mp_terms(),
        point in prop::collection::vec(0u64..13, 3),
    ) {
        let field = PrimeField::new(p).unwrap();
        let ctx = MpCtx::new(field, 3);
        let assignment: Vec<FpElt> = point.iter().map(|&v| field.elt(v)).collect();
        // polynomials in x with multivariate coefficients
        let f = DensePoly::from_coeffs(ctx, vec![mp_from(ctx, &fa), mp_from(ctx, &fb)]);
        let g = DensePoly::from_coeffs(ctx, vec![mp_from(ctx, &ga), mp_from(ctx, &fa)]);
        let lhs = specialize(&f.mul(&g), &assignment).unwrap();
        let rhs = specialize(&f, &assignment).unwrap().mul(&specialize(&g, &assignment).unwrap());
        prop_assert_eq!(lhs, rhs);
        let sum_lhs = specialize(&f.add(&g), &assignment).unwrap();
        let sum_rhs = specialize(&f, &assignment).unwrap().add(&specialize(&g, &assignment).unwrap());
        prop_assert_eq!(sum_lhs, sum_rhs);
    }

    #[test]
    fn multipoly_distributivity(
        p in prop::sample::select(vec![3u64, 5, 7]),
        fa in arb_mp_terms(),
        fb in arb_mp_terms(),
        fc in arb_mp_terms(),
    ) {
        let ctx = MpCtx::new(PrimeField::new(p).unwrap(), 3);
        let (f, g, h) = (mp_from(ctx, &fa), mp_from(ctx, &fb), mp_from(ctx, &fc));
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
    }

    #[test]
    fn partial_derivative_is_linear(
        p in prop::sample::select(vec![3u64, 5, 7]),
        fa in arb_mp_terms(),
        fb in arb_mp_terms(),
        i in 0usize..3,
    ) {
        let ctx = MpCtx::new(PrimeField::new(p).unwrap(), 3);
        let (f, g) = (mp_from(ctx, &fa), mp_from(ctx, &fb));
        prop_assert_eq!(f.add(&g).partial(i), f.partial(i).add(&g.partial(i)));
    }
}
