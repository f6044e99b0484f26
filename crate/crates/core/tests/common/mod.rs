//! Oracles written directly against structure constants and `Δ` coordinates,
//! sharing no solving code with the library.
#![allow(dead_code)]

use num_traits::{One, Zero};

use mha_core::comult::ComultMatrix;
use mha_core::exactlin::{Matrix, Scalar, Vector};

/// Gauss-Jordan on an augmented system. `None` unless the solution exists and is unique.
pub fn unique_solution(mut rows: Vec<Vector>, mut rhs: Vec<Scalar>, unknowns: usize) -> Option<Vector> {
    let mut pivot_row = 0;
    for col in 0..unknowns {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = Scalar::one() / rows[pivot_row][col].clone();
        for c in 0..unknowns {
            rows[pivot_row][c] = &rows[pivot_row][c] * &inv;
        }
        rhs[pivot_row] = &rhs[pivot_row] * &inv;
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..unknowns {
                    let v = &rows[pivot_row][c] * &f;
                    rows[r][c] -= v;
                }
                let v = &rhs[pivot_row] * &f;
                rhs[r] -= v;
            }
        }
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(rhs[..unknowns].to_vec())
}

/// `b_i b_j` as a dense vector.
pub fn product(cm: &ComultMatrix, i: usize, j: usize) -> Vector {
    let n = cm.dim();
    let mut out = vec![Scalar::zero(); n];
    for (k, c) in cm.algebra().constants().basis_product(i, j) {
        out[*k] += c.clone();
    }
    out
}

/// Counit from `(ε⊗ι)Δ(a) = a` and `(ι⊗ε)Δ(a) = a` stacked.
pub fn oracle_counit(cm: &ComultMatrix) -> Option<Vector> {
    let n = cm.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in 0..n {
        let d = cm.delta_basis(a);
        for out in 0..n {
            let mut left = vec![Scalar::zero(); n];
            let mut right = vec![Scalar::zero(); n];
            for v in 0..n {
                left[v] = d[v * n + out].clone();
                right[v] = d[out * n + v].clone();
            }
            let target = if out == a { Scalar::one() } else { Scalar::zero() };
            rows.push(left);
            rhs.push(target.clone());
            rows.push(right);
            rhs.push(target);
        }
    }
    unique_solution(rows, rhs, n)
}

/// The convolution inverse of the identity: `R` with `m(R⊗ι)Δ(a) = ε(a)1 = m(ι⊗R)Δ(a)`.
/// Unknown `R[m][k]` (coefficient of `b_m` in `R(b_k)`) has index `m*n + k`.
/// Returns the matrix whose column `k` is `R(b_k)`.
pub fn oracle_antipode(cm: &ComultMatrix, eps: &[Scalar]) -> Option<Matrix> {
    let n = cm.dim();
    let unit = cm.algebra().unit()?.to_vec();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in 0..n {
        let d = cm.delta_basis(a);
        for first in [true, false] {
            let mut block = vec![vec![Scalar::zero(); n * n]; n];
            for k in 0..n {
                for l in 0..n {
                    let c = &d[k * n + l];
                    if c.is_zero() {
                        continue;
                    }
                    for m in 0..n {
                        let (prod, var) = if first {
                            (product(cm, m, l), m * n + k)
                        } else {
                            (product(cm, k, m), m * n + l)
                        };
                        for (p, coef) in prod.iter().enumerate() {
                            if !coef.is_zero() {
                                block[p][var] += c * coef;
                            }
                        }
                    }
                }
            }
            for (p, row) in block.into_iter().enumerate() {
                rows.push(row);
                rhs.push(&eps[a] * &unit[p]);
            }
        }
    }
    let r = unique_solution(rows, rhs, n * n)?;
    let mut s = Matrix::zeros(n, n);
    for m in 0..n {
        for k in 0..n {
            s.set(m, k, r[m * n + k].clone());
        }
    }
    Some(s)
}

/// `T1` on a general tensor, from coordinates: `Δ(b_p)(1⊗b_q)` summed.
pub fn oracle_t1(cm: &ComultMatrix, t: &[Scalar]) -> Vector {
    let n = cm.dim();
    let mut out = vec![Scalar::zero(); n * n];
    for p in 0..n {
        for q in 0..n {
            let coef = &t[p * n + q];
            if coef.is_zero() {
                continue;
            }
            let d = cm.delta_basis(p);
            for j in 0..n {
                for k in 0..n {
                    let c = &d[j * n + k];
                    if c.is_zero() {
                        continue;
                    }
                    for (r, v) in product(cm, k, q).iter().enumerate() {
                        if !v.is_zero() {
                            out[j * n + r] += coef * c * v;
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn outer(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}
