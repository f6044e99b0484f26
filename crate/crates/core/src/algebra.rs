//! Finite-dimensional algebras given by structure constants.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::{axpy, is_zero_vector, kernel, solve, zeros, Matrix, Scalar, Vector};

/// Largest algebra dimension accepted by default. Galois matrices are `dim² × dim²`.
pub const DEFAULT_MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra dimension must be positive")]
    ZeroDimension,
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("expected {expected} basis labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("structure constant cube has {got} entries, expected {expected}")]
    CubeShape { expected: usize, got: usize },
    #[error("associativity fails: (b{i}·b{j})·b{k} != b{i}·(b{j}·b{k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("product is degenerate: a nonzero element annihilates A on the {side}")]
    DegenerateProduct { side: Side, witness: Vector },
    #[error("declared unit is not a two-sided identity")]
    BadUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Raw (unvalidated) multiplication table: `b_i · b_j = Σ_k c[i][j][k] b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    /// `products[i * dim + j]` lists the nonzero `(k, c)` of `b_i · b_j`.
    products: Vec<Vec<(usize, Scalar)>>,
}

impl StructureConstants {
    /// `cube[(i * dim + j) * dim + k]` is the coefficient of `b_k` in `b_i · b_j`.
    pub fn from_cube(dim: usize, cube: &[Scalar]) -> Result<Self, AlgebraError> {
        if cube.len() != dim * dim * dim {
            return Err(AlgebraError::CubeShape {
                expected: dim * dim * dim,
                got: cube.len(),
            });
        }
        let products = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &cube[ij * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(Self { dim, products })
    }

    /// Builds the table from `(i, j, k, coefficient)` entries; omitted entries are zero
    /// and repeated entries are summed.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Self {
        let mut cube = zeros(dim * dim * dim);
        for (i, j, k, c) in entries {
            cube[(i * dim + j) * dim + k] += c;
        }
        Self::from_cube(dim, &cube).expect("cube has the right shape by construction")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Scalar::zero, |(_, c)| c.clone())
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, m) in self.basis_product(i, j) {
                    out[*k] += &c * m;
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vector {
        crate::exactlin::unit_vector(self.dim, i)
    }

    /// First basis triple where associativity fails, if any.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let ab: Vec<Vector> = (0..n * n)
            .map(|ij| self.multiply(&self.basis_vector(ij / n), &self.basis_vector(ij % n)))
            .collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.multiply(&ab[i * n + j], &self.basis_vector(k));
                    let right = self.multiply(&self.basis_vector(i), &ab[j * n + k]);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Matrix of `x ↦ (x·b_0, …, x·b_{n-1})` (left) or `x ↦ (b_0·x, …)` (right),
    /// shape `n² × n`.
    fn annihilator_system(&self, side: Side) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n * n, n);
        for x in 0..n {
            for b in 0..n {
                let (i, j) = match side {
                    Side::Left => (x, b),
                    Side::Right => (b, x),
                };
                for (k, c) in self.basis_product(i, j) {
                    m.set(b * n + k, x, c.clone());
                }
            }
        }
        m
    }

    /// Non-degeneracy of the product: no nonzero `x` with `xA = 0`, and none with `Ax = 0`.
    pub fn product_nondegenerate(&self) -> Nondegeneracy {
        for side in [Side::Left, Side::Right] {
            if let Some(w) = kernel(&self.annihilator_system(side)).into_iter().next() {
                return Nondegeneracy::Degenerate { side, witness: w };
            }
        }
        Nondegeneracy::Nondegenerate
    }

    /// Solves `u·b_i = b_i = b_i·u` for all `i`.
    pub fn find_unit(&self) -> Option<Vector> {
        let n = self.dim;
        // Unknown u; rows: (side, i, k).
        let mut m = Matrix::zeros(2 * n * n, n);
        let mut rhs = zeros(2 * n * n);
        for i in 0..n {
            for u in 0..n {
                for (k, c) in self.basis_product(u, i) {
                    m.set(i * n + k, u, c.clone());
                }
                for (k, c) in self.basis_product(i, u) {
                    m.set(n * n + i * n + k, u, c.clone());
                }
            }
            rhs[i * n + i] = Scalar::one();
            rhs[n * n + i * n + i] = Scalar::one();
        }
        let u = solve(&m, &rhs).ok()?;
        // A two-sided identity is unique whenever it exists.
        Some(u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nondegeneracy {
    Nondegenerate,
    Degenerate { side: Side, witness: Vector },
}

impl Nondegeneracy {
    pub fn holds(&self) -> bool {
        matches!(self, Nondegeneracy::Nondegenerate)
    }
}

/// A validated finite-dimensional associative algebra with non-degenerate product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDimAlgebra {
    labels: Vec<String>,
    constants: StructureConstants,
    unit: Option<Vector>,
}

impl FinDimAlgebra {
    pub fn validate(
        labels: Vec<String>,
        constants: StructureConstants,
        declared_unit: Option<Vector>,
    ) -> Result<Self, AlgebraError> {
        Self::validate_with_cap(labels, constants, declared_unit, DEFAULT_MAX_DIM)
    }

    pub fn validate_with_cap(
        labels: Vec<String>,
        constants: StructureConstants,
        declared_unit: Option<Vector>,
        max_dim: usize,
    ) -> Result<Self, AlgebraError> {
        let dim = constants.dim();
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        if dim > max_dim {
            return Err(AlgebraError::DimensionTooLarge { dim, cap: max_dim });
        }
        if labels.len() != dim {
            return Err(AlgebraError::LabelCount {
                expected: dim,
                got: labels.len(),
            });
        }
        if let Some((i, j, k)) = constants.associativity_witness() {
            return Err(AlgebraError::NonAssociative { i, j, k });
        }
        let unit = match declared_unit {
            Some(u) => {
                if u.len() != dim || !is_two_sided_unit(&constants, &u) {
                    return Err(AlgebraError::BadUnit);
                }
                Some(u)
            }
            None => constants.find_unit(),
        };
        if let Nondegeneracy::Degenerate { side, witness } = constants.product_nondegenerate() {
            return Err(AlgebraError::DegenerateProduct { side, witness });
        }
        Ok(Self {
            labels,
            constants,
            unit,
        })
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.constants.multiply(x, y)
    }

    pub fn basis(&self, i: usize) -> Vector {
        crate::exactlin::unit_vector(self.dim(), i)
    }

    pub fn product_nondegenerate(&self) -> Nondegeneracy {
        self.constants.product_nondegenerate()
    }

    /// Human-readable coordinates, e.g. `x - gx`.
    pub fn describe(&self, v: &[Scalar]) -> String {
        describe_vector(&self.labels, v)
    }
}

fn is_two_sided_unit(c: &StructureConstants, u: &[Scalar]) -> bool {
    (0..c.dim()).all(|i| {
        let b = crate::exactlin::unit_vector(c.dim(), i);
        c.multiply(u, &b) == b && c.multiply(&b, u) == b
    })
}

/// Linear combination of labels, e.g. `1/2 x - gx`; `0` for the zero vector.
pub fn describe_vector(labels: &[String], v: &[Scalar]) -> String {
    if is_zero_vector(v) {
        return "0".to_string();
    }
    let mut out = String::new();
    for (c, label) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Scalar::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push(' ');
        }
        out.push_str(label);
    }
    out
}

/// Sum of `coeffs[i] * vectors[i]`.
pub fn combine(dim: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut acc = zeros(dim);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut acc, c, v);
    }
    acc
}
