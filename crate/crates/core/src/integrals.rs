//! Invariant functionals (integrals) and faithfulness.

use num_traits::Zero;

use crate::algebra::{FinDimAlgebra, Side};
use crate::comult::ComultMatrix;
use crate::exactlin::{dot, int, kernel, rank, Matrix, Scalar, Vector};
use crate::tensor::{self, Factor};

/// A covector on `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearFunctional(pub Vector);

impl LinearFunctional {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn apply(&self, x: &[Scalar]) -> Scalar {
        dot(&self.0, x)
    }

    pub fn scaled(&self, c: &Scalar) -> LinearFunctional {
        LinearFunctional(crate::exactlin::scale(&self.0, c))
    }

    pub fn is_zero(&self) -> bool {
        crate::exactlin::is_zero_vector(&self.0)
    }
}

/// Coefficient matrix of the invariance system, unknown `φ ∈ A'`.
///
/// With a unit: left is `(ι⊗φ)Δ(b_i) = φ(b_i)1`, right is `(φ⊗ι)Δ(b_i) = φ(b_i)1`.
/// Without one the sliced form is used: `(ι⊗φ)((b⊗1)Δ(a)) = φ(a)b`, resp.
/// `(φ⊗ι)(Δ(a)(1⊗b)) = φ(a)b`.
pub fn invariance_system(cm: &ComultMatrix, side: Side) -> Matrix {
    let n = cm.dim();
    let alg = cm.algebra();
    match alg.unit() {
        Some(unit) => {
            let mut m = Matrix::zeros(n * n, n);
            for i in 0..n {
                let d = cm.delta_basis(i);
                for k in 0..n {
                    let row = i * n + k;
                    for l in 0..n {
                        let c = match side {
                            Side::Left => &d[k * n + l],
                            Side::Right => &d[l * n + k],
                        };
                        if !c.is_zero() {
                            m.set(row, l, c.clone());
                        }
                    }
                    if !unit[k].is_zero() {
                        let cur = m.get(row, i) - &unit[k];
                        m.set(row, i, cur);
                    }
                }
            }
            m
        }
        None => {
            let consts = alg.constants();
            let mut m = Matrix::zeros(n * n * n, n);
            for a in 0..n {
                for b in 0..n {
                    let t = match side {
                        Side::Left => tensor::left_mul(consts, &alg.basis(b), Factor::First, cm.delta_basis(a)),
                        Side::Right => tensor::right_mul(consts, cm.delta_basis(a), &alg.basis(b), Factor::Second),
                    };
                    for k in 0..n {
                        let row = (a * n + b) * n + k;
                        for l in 0..n {
                            let c = match side {
                                Side::Left => &t[k * n + l],
                                Side::Right => &t[l * n + k],
                            };
                            if !c.is_zero() {
                                m.set(row, l, c.clone());
                            }
                        }
                        if k == b {
                            let cur = m.get(row, a) - int(1);
                            m.set(row, a, cur);
                        }
                    }
                }
            }
            m
        }
    }
}

/// Basis of the left- or right-invariant functionals. Nonzero members are integrals.
pub fn invariant_space(cm: &ComultMatrix, side: Side) -> Vec<LinearFunctional> {
    kernel(&invariance_system(cm, side))
        .into_iter()
        .map(LinearFunctional)
        .collect()
}

/// Whether `f` satisfies the invariance system on the given side exactly.
pub fn is_invariant(cm: &ComultMatrix, side: Side, f: &LinearFunctional) -> bool {
    invariance_system(cm, side)
        .mul_vec(f.coords())
        .map(|r| crate::exactlin::is_zero_vector(&r))
        .unwrap_or(false)
}

/// `G[i][j] = f(b_i · b_j)`.
pub fn gram_matrix(alg: &FinDimAlgebra, f: &LinearFunctional) -> Matrix {
    let n = alg.dim();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v: Scalar = alg
                .constants()
                .basis_product(i, j)
                .iter()
                .map(|(k, c)| c * &f.0[*k])
                .sum();
            g.set(i, j, v);
        }
    }
    g
}

/// `(a, b) ↦ f(ab)` is non-degenerate. In finite dimensions one side suffices,
/// so this is just full rank of the Gram matrix.
pub fn is_faithful(alg: &FinDimAlgebra, f: &LinearFunctional) -> bool {
    rank(&gram_matrix(alg, f)) == alg.dim()
}

/// Coefficient range for the bounded search over combinations of basis vectors.
pub const DEFAULT_COEFFICIENT_BOUND: i64 = 3;
/// Upper limit on the number of combinations tried before giving up.
pub const DEFAULT_SEARCH_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vector),
    /// No candidate exists that can pass: the space is empty, or one-dimensional
    /// and its generator fails (the test is invariant under nonzero scaling).
    NoneExists,
    /// Basis vectors and every combination in the coefficient box failed.
    Exhausted { tried: usize },
}

/// Tries each basis vector, then (only when the space has dimension > 1)
/// small-integer combinations in `-bound..=bound`, in a fixed order.
pub fn bounded_search(
    basis: &[Vector],
    bound: i64,
    limit: usize,
    mut accept: impl FnMut(&Vector) -> bool,
) -> SearchOutcome {
    if basis.is_empty() {
        return SearchOutcome::NoneExists;
    }
    for v in basis {
        if accept(v) {
            return SearchOutcome::Found(v.clone());
        }
    }
    if basis.len() == 1 {
        return SearchOutcome::NoneExists;
    }
    let k = basis.len();
    let n = basis[0].len();
    let width = (2 * bound + 1) as usize;
    let mut digits = vec![0usize; k];
    let mut tried = basis.len();
    loop {
        let coeffs: Vec<i64> = digits.iter().map(|&d| d as i64 - bound).collect();
        // Zero and single-support combinations are scaled basis vectors, already tried.
        if coeffs.iter().filter(|&&c| c != 0).count() >= 2 {
            if tried >= limit {
                break;
            }
            tried += 1;
            let mut v = crate::exactlin::zeros(n);
            for (c, b) in coeffs.iter().zip(basis) {
                crate::exactlin::axpy(&mut v, &int(*c), b);
            }
            if accept(&v) {
                return SearchOutcome::Found(v);
            }
        }
        // odometer increment; stop after wrapping around
        let mut pos = 0;
        while pos < k {
            digits[pos] += 1;
            if digits[pos] < width {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    SearchOutcome::Exhausted { tried }
}

/// Looks for a faithful member of a space of functionals.
pub fn find_faithful(alg: &FinDimAlgebra, space: &[LinearFunctional]) -> SearchOutcome {
    let basis: Vec<Vector> = space.iter().map(|f| f.0.clone()).collect();
    bounded_search(
        &basis,
        DEFAULT_COEFFICIENT_BOUND,
        DEFAULT_SEARCH_LIMIT,
        |v| is_faithful(alg, &LinearFunctional(v.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_group_algebra, build_monoid_bialgebra, build_sweedler_h4, CayleyTable};
    use crate::exactlin::{ratio, unit_vector};

    #[test]
    fn c2_left_integral_is_dual_of_identity() {
        let e = build_group_algebra("c2", &CayleyTable::cyclic(2));
        let space = invariant_space(&e.comult, Side::Left);
        assert_eq!(space, vec![LinearFunctional(vec![int(1), int(0)])]);
        let g = gram_matrix(e.algebra(), &space[0]);
        assert_eq!(g, Matrix::identity(2));
        assert!(is_faithful(e.algebra(), &space[0]));
    }

    #[test]
    fn h4_left_and_right_integrals_differ() {
        let e = build_sweedler_h4();
        let left = invariant_space(&e.comult, Side::Left);
        let right = invariant_space(&e.comult, Side::Right);
        assert_eq!(left, vec![LinearFunctional(unit_vector(4, 3))]);
        assert_eq!(right, vec![LinearFunctional(unit_vector(4, 2))]);
        assert!(!is_invariant(&e.comult, Side::Right, &left[0]));
    }

    #[test]
    fn h4_gram_of_left_integral() {
        let e = build_sweedler_h4();
        let g = gram_matrix(e.algebra(), &LinearFunctional(unit_vector(4, 3)));
        // basis (1, g, x, gx)
        assert_eq!(g.get(1, 2), &int(1));
        assert_eq!(g.get(2, 1), &int(-1));
        assert_eq!(g.get(0, 3), &int(1));
        assert_eq!(g.get(3, 0), &int(1));
        assert_eq!(g.rank(), 4);
    }

    #[test]
    fn monoid_integral_not_faithful() {
        let e = build_monoid_bialgebra();
        let space = invariant_space(&e.comult, Side::Left);
        assert_eq!(space, vec![LinearFunctional(vec![int(1), int(0)])]);
        let g = gram_matrix(e.algebra(), &space[0]);
        assert_eq!(g, Matrix::from_i64(&[&[1, 0], &[0, 0]]));
        assert!(!is_faithful(e.algebra(), &space[0]));
        assert_eq!(find_faithful(e.algebra(), &space), SearchOutcome::NoneExists);
    }

    #[test]
    fn faithfulness_is_scale_invariant() {
        let e = build_sweedler_h4();
        let f = LinearFunctional(unit_vector(4, 3));
        for c in [int(2), int(-1), ratio(7, 3)] {
            assert!(is_faithful(e.algebra(), &f.scaled(&c)));
        }
    }

    #[test]
    fn bounded_search_finds_combination() {
        // Accept only vectors with both coordinates nonzero.
        let basis = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let out = bounded_search(&basis, 3, 100, |v| v.iter().all(|x| !x.is_zero()));
        assert!(matches!(out, SearchOutcome::Found(_)));
        let out = bounded_search(&basis, 3, 100, |_| false);
        assert_eq!(out, SearchOutcome::Exhausted { tried: 38 });
        assert_eq!(bounded_search(&[], 3, 100, |_| true), SearchOutcome::NoneExists);
    }
}
