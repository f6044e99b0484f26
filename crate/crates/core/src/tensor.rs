//! Dense tensors in `A⊗A` and `A⊗A⊗A` over the row-major basis order
//! `(i, j) ↦ i·n + j` and `(i, j, k) ↦ (i·n + j)·n + k`.

use num_traits::Zero;

use crate::algebra::StructureConstants;
use crate::exactlin::{zeros, Scalar, Vector};

/// Which tensor factor an element multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

pub fn pure(n: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut t = zeros(n * n);
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                t[i * n + j] = a * b;
            }
        }
    }
    t
}

/// `(a in factor)·t`, e.g. `(a⊗1)t` for `Factor::First`.
pub fn left_mul(c: &StructureConstants, a: &[Scalar], factor: Factor, t: &[Scalar]) -> Vector {
    let n = c.dim();
    let mut out = zeros(n * n);
    for (idx, coef) in t.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let (i, j) = (idx / n, idx % n);
        for (m, am) in a.iter().enumerate() {
            if am.is_zero() {
                continue;
            }
            let w = coef * am;
            match factor {
                Factor::First => {
                    for (k, p) in c.basis_product(m, i) {
                        out[k * n + j] += &w * p;
                    }
                }
                Factor::Second => {
                    for (k, p) in c.basis_product(m, j) {
                        out[i * n + k] += &w * p;
                    }
                }
            }
        }
    }
    out
}

/// `t·(a in factor)`, e.g. `t(1⊗a)` for `Factor::Second`.
pub fn right_mul(c: &StructureConstants, t: &[Scalar], a: &[Scalar], factor: Factor) -> Vector {
    let n = c.dim();
    let mut out = zeros(n * n);
    for (idx, coef) in t.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let (i, j) = (idx / n, idx % n);
        for (m, am) in a.iter().enumerate() {
            if am.is_zero() {
                continue;
            }
            let w = coef * am;
            match factor {
                Factor::First => {
                    for (k, p) in c.basis_product(i, m) {
                        out[k * n + j] += &w * p;
                    }
                }
                Factor::Second => {
                    for (k, p) in c.basis_product(j, m) {
                        out[i * n + k] += &w * p;
                    }
                }
            }
        }
    }
    out
}

/// Product in the algebra `A⊗A`.
pub fn mul(c: &StructureConstants, s: &[Scalar], t: &[Scalar]) -> Vector {
    let n = c.dim();
    let mut out = zeros(n * n);
    for (x, sx) in s.iter().enumerate() {
        if sx.is_zero() {
            continue;
        }
        for (y, ty) in t.iter().enumerate() {
            if ty.is_zero() {
                continue;
            }
            let w = sx * ty;
            let (i, j) = (x / n, x % n);
            let (k, l) = (y / n, y % n);
            for (p, cp) in c.basis_product(i, k) {
                for (q, cq) in c.basis_product(j, l) {
                    out[p * n + q] += &w * cp * cq;
                }
            }
        }
    }
    out
}

/// `σ(t)`: swaps the two factors.
pub fn flip(n: usize, t: &[Scalar]) -> Vector {
    let mut out = zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = t[i * n + j].clone();
        }
    }
    out
}

/// `(ι⊗ω)(t)`.
pub fn slice_second(n: usize, t: &[Scalar], omega: &[Scalar]) -> Vector {
    let mut out = zeros(n);
    for (idx, coef) in t.iter().enumerate() {
        let w = &omega[idx % n];
        if !coef.is_zero() && !w.is_zero() {
            out[idx / n] += coef * w;
        }
    }
    out
}

/// `(ω⊗ι)(t)`.
pub fn slice_first(n: usize, omega: &[Scalar], t: &[Scalar]) -> Vector {
    let mut out = zeros(n);
    for (idx, coef) in t.iter().enumerate() {
        let w = &omega[idx / n];
        if !coef.is_zero() && !w.is_zero() {
            out[idx % n] += coef * w;
        }
    }
    out
}

/// `m(t)`: multiplies the two factors together.
pub fn multiply_out(c: &StructureConstants, t: &[Scalar]) -> Vector {
    let n = c.dim();
    let mut out = zeros(n);
    for (idx, coef) in t.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        for (k, p) in c.basis_product(idx / n, idx % n) {
            out[*k] += coef * p;
        }
    }
    out
}

/// Applies `f ⊗ g` where `f`, `g` are `n × n` coordinate maps given as closures
/// on basis indices.
pub fn map_each(
    n: usize,
    t: &[Scalar],
    f: impl Fn(usize) -> Vector,
    g: impl Fn(usize) -> Vector,
) -> Vector {
    let fs: Vec<Vector> = (0..n).map(&f).collect();
    let gs: Vec<Vector> = (0..n).map(&g).collect();
    let mut out = zeros(n * n);
    for (idx, coef) in t.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let (fi, gj) = (&fs[idx / n], &gs[idx % n]);
        for (p, x) in fi.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in gj.iter().enumerate() {
                if !y.is_zero() {
                    out[p * n + q] += coef * x * y;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, unit_vector};

    fn c2() -> StructureConstants {
        StructureConstants::from_entries(
            2,
            [
                (0, 0, 0, int(1)),
                (0, 1, 1, int(1)),
                (1, 0, 1, int(1)),
                (1, 1, 0, int(1)),
            ],
        )
    }

    #[test]
    fn one_sided_products_agree_with_full_product() {
        let c = c2();
        let e = unit_vector(2, 0);
        let s = unit_vector(2, 1);
        let t = pure(2, &s, &e);
        assert_eq!(left_mul(&c, &s, Factor::First, &t), mul(&c, &pure(2, &s, &e), &t));
        assert_eq!(right_mul(&c, &t, &s, Factor::Second), pure(2, &s, &s));
        assert_eq!(flip(2, &t), pure(2, &e, &s));
        assert_eq!(multiply_out(&c, &pure(2, &s, &s)), e);
        assert_eq!(slice_second(2, &t, &e), s);
        assert_eq!(slice_first(2, &s, &t), e);
    }
}
