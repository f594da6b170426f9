//! Exact-arithmetic toolkit for families of cyclic covers of the projective
//! line `y^m = prod_i (x - t_i)^{a_i}`.
//!
//! The library has four layers:
//!
//! * [`arith`]: prime fields `F_p`, dense univariate polynomials, and sparse
//!   multivariate polynomials in the branch coordinates `t_1..t_N`.
//! * [`monodromy`]: the family parameter `(m, (a_1..a_N))`, its validity
//!   constraints, and the curve invariants attached to it (genus, eigenspace
//!   dimensions of the `Z/m`-action on holomorphic differentials).
//! * [`special`]: the specialness criterion comparing the dimension of the
//!   Hermitian symmetric domain built from the eigenspace dimensions against
//!   the family dimension `N - 3`, and the exhaustive search over monodromy
//!   data. Within every finite search box tried the criterion selects the
//!   same twenty equivalence classes.
//! * [`charp`]: a characteristic-`p` laboratory: Cartier-Manin matrices in
//!   eigenspace block form (numeric or symbolic branch points), p-rank, and
//!   an independent point-counting / L-polynomial oracle.

pub mod arith;
pub mod charp;
pub mod monodromy;
pub mod special;
