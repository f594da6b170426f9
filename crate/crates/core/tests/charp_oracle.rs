//! The characteristic-p centerpiece: the Cartier-matrix p-rank and the
//! L-polynomial p-rank computed along independent routes must agree, and
//! the L-polynomial built from counts up to the genus must predict the
//! counts beyond it.

use specialis::charp::{
    cartier_matrix_numeric, cartier_matrix_symbolic, count_points, l_polynomial, p_rank,
    p_rank_from_l, Branch, CharpContext,
};
use specialis::monodromy::MonodromyDatum;

fn datum(m: u64, a: &[u64]) -> MonodromyDatum {
    MonodromyDatum::new(m, a.to_vec()).unwrap()
}

/// `want` size-k subsets of {0..p-1} in ascending order, strided evenly
/// through the full lexicographic enumeration.
fn branch_configs(p: u64, k: usize, want: usize) -> Vec<Vec<u64>> {
    let mut all = Vec::new();
    let mut cur: Vec<u64> = (0..k as u64).collect();
    'outer: loop {
        all.push(cur.clone());
        // advance the rightmost digit that has room (max at slot i is p-k+i)
        for i in (0..k).rev() {
            if cur[i] < p - (k - i) as u64 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        break;
    }
    if all.len() <= want {
        return all;
    }
    let step = all.len() / want;
    all.into_iter().step_by(step).take(want).collect()
}

fn check_oracles(d: &MonodromyDatum, p: u64, ts: &[u64]) {
    let ctx = CharpContext::new(d, p, Branch::Numeric(ts.to_vec())).unwrap();
    let g = ctx.genus();
    let via_cartier = p_rank(&ctx).unwrap();
    let l = l_polynomial(&ctx).unwrap();
    let via_l = p_rank_from_l(&l);
    assert_eq!(
        via_cartier, via_l,
        "p-rank oracles disagree for {d} at p = {p}, branch {ts:?}"
    );
    assert!(via_cartier <= g);
    assert_eq!(l.coefficients()[0], 1, "L(0) != 1");
    assert!(l.functional_equation_holds());
}

#[test]
fn oracle_equivalence_sample() {
    // a fast slice of the full acceptance population
    for ts in branch_configs(13, 4, 10) {
        check_oracles(&datum(2, &[1; 4]), 13, &ts);
        check_oracles(&datum(4, &[1; 4]), 13, &ts);
    }
    for ts in branch_configs(7, 4, 10) {
        check_oracles(&datum(3, &[1, 1, 2, 2]), 7, &ts);
    }
    for ts in branch_configs(11, 6, 8) {
        check_oracles(&datum(2, &[1; 6]), 11, &ts);
    }
}

#[test]
fn small_prime_cells_are_exhaustible() {
    // p = 5 admits only five 4-point configurations; run them all
    for ts in branch_configs(5, 4, 5) {
        check_oracles(&datum(2, &[1; 4]), 5, &ts);
        check_oracles(&datum(4, &[1; 4]), 5, &ts);
    }
}

#[test]
fn exact_division_never_fails() {
    // the Cartier extraction must divide exactly for every valid context
    for d in [datum(3, &[1, 1, 2, 2]), datum(4, &[1, 1, 2, 2, 2])] {
        let p = 13;
        for ts in branch_configs(p, d.branch_count(), 50) {
            let ctx = CharpContext::new(&d, p, Branch::Numeric(ts.clone())).unwrap();
            for n in 1..d.m() {
                cartier_matrix_numeric(&ctx, n)
                    .unwrap_or_else(|e| panic!("division failed for {d}, branch {ts:?}: {e}"));
            }
        }
    }
}

#[test]
fn predicted_counts_validate_ramified_fibers() {
    // data with gcd(a_i, m) > 1 exercise the branch-fiber splitting rule;
    // the L-polynomial from N_1..N_g must predict the next counts exactly
    let cases: &[(u64, &[u64], u64)] = &[
        (4, &[1, 1, 2], 13),     // d_i = (1, 1, 2), genus 1
        (6, &[1, 2, 3], 7),      // d_i = (1, 2, 3), genus 1
        (6, &[1, 2, 3], 13),
        (4, &[1, 1, 2, 2, 2], 5), // genus 3, three doubly-ramified fibers
    ];
    for &(m, a, p) in cases {
        let d = datum(m, a);
        let n = d.branch_count();
        for ts in branch_configs(p, n, 6) {
            let ctx = CharpContext::new(&d, p, Branch::Numeric(ts.clone())).unwrap();
            let g = ctx.genus();
            let l = l_polynomial(&ctx).unwrap();
            for k in g + 1..=(g + 2).min(2 * g.max(1)) {
                let predicted = l.predicted_count(k);
                let direct = count_points(&ctx, k).unwrap() as i128;
                assert_eq!(
                    predicted, direct,
                    "L from counts up to g = {g} fails to predict N_{k} for {d}, p = {p}, branch {ts:?}"
                );
            }
        }
    }
}

#[test]
fn hyperelliptic_block_matches_the_classical_formula() {
    // for y^2 = f(x) the matrix of the Cartier operator on dx/y, x dx/y, ...
    // is A[s][r] = c_{s p - r} where f^((p-1)/2) = sum c_k x^k; an
    // independent route to the same entries as the extraction/division path
    use specialis::arith::{DensePoly, FpElt, PrimeField};
    let d = datum(2, &[1; 6]);
    let p = 7;
    for ts in branch_configs(p, 6, 5) {
        let ctx = CharpContext::new(&d, p, Branch::Numeric(ts.clone())).unwrap();
        let block = cartier_matrix_numeric(&ctx, 1).unwrap();
        assert_eq!(block.size, 2);

        let field = PrimeField::new(p).unwrap();
        let mut f = DensePoly::one(field);
        for &t in &ts {
            f = f.mul(&DensePoly::from_coeffs(
                field,
                vec![field.elt(t).neg(), field.one()],
            ));
        }
        let powered = f.pow((p - 1) / 2);
        let c = |k: u64| -> FpElt { powered.coeff(k as usize) };
        for s in 1..=2u64 {
            for r in 1..=2u64 {
                assert_eq!(
                    *block.entry(s as usize - 1, r as usize - 1),
                    c(s * p - r),
                    "entry ({s},{r}) differs from c_(sp-r) at branch {ts:?}"
                );
            }
        }
    }
}

#[test]
fn symbolic_specializes_to_numeric_across_population() {
    let d = datum(4, &[1, 1, 2, 2, 2]);
    let p = 5;
    let sym = CharpContext::new(&d, p, Branch::Symbolic).unwrap();
    let blocks: Vec<_> = (1..4).map(|n| cartier_matrix_symbolic(&sym, n).unwrap()).collect();
    for ts in branch_configs(p, 5, 5) {
        let num = CharpContext::new(&d, p, Branch::Numeric(ts.clone())).unwrap();
        let field = num.field();
        let point: Vec<_> = ts.iter().map(|&t| field.elt(t)).collect();
        for (n, sym_block) in blocks.iter().enumerate() {
            let num_block = cartier_matrix_numeric(&num, n as u64 + 1).unwrap();
            assert_eq!(sym_block.size, num_block.size);
            for (s, e) in sym_block.entries.iter().zip(&num_block.entries) {
                assert_eq!(s.eval(&point).unwrap(), *e);
            }
        }
    }
}

#[test]
fn legendre_anchor() {
    // y^2 = x(x-1)(x-lambda) at p = 3: Cartier entry -(1 + lambda), so the
    // curve is supersingular exactly at lambda = -1 = 2, the only value of
    // lambda left in F_3. Confirmed by point counts.
    let sym = CharpContext::with_infinity(2, &[1, 1, 1], 3, Branch::Symbolic).unwrap();
    let block = cartier_matrix_symbolic(&sym, 1).unwrap();
    assert_eq!(block.size, 1);
    let field = sym.field();
    // specialize t = (0, 1, lambda): the entry becomes -(1 + lambda)
    for lambda in 0..3u64 {
        let point = vec![field.elt(0), field.elt(1), field.elt(lambda)];
        let entry = block.entries[0].eval(&point).unwrap();
        assert_eq!(entry, field.elt_i64(-(1 + lambda as i64)));
    }
    // lambda = 2: supersingular; N_1 = p + 1 = 4 and both p-ranks vanish
    let num = CharpContext::with_infinity(2, &[1, 1, 1], 3, Branch::Numeric(vec![0, 1, 2])).unwrap();
    assert_eq!(count_points(&num, 1).unwrap(), 4);
    assert_eq!(p_rank(&num).unwrap(), 0);
    let l = l_polynomial(&num).unwrap();
    assert_eq!(l.coefficients(), &[1, 0, 3]);
    assert_eq!(p_rank_from_l(&l), 0);
    // an ordinary Legendre curve needs a bigger field: p = 7, lambda = 3
    let ord = CharpContext::with_infinity(2, &[1, 1, 1], 7, Branch::Numeric(vec![0, 1, 3])).unwrap();
    assert_eq!(p_rank(&ord).unwrap(), p_rank_from_l(&l_polynomial(&ord).unwrap()));
}
