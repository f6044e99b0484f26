//! Exact rational linear algebra.
//!
//! Everything downstream (Galois maps, invariance systems, Gram forms, the
//! counit/antipode solves) reduces to rank, kernel and solve over the
//! rationals. Elimination pivots on the first nonzero entry in row order so
//! that results are bit-identical across runs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Largest absolute entry; zero for an empty slice.
pub fn max_abs(v: &[Scalar]) -> Scalar {
    v.iter()
        .map(Signed::abs)
        .fold(Scalar::zero(), |acc, x| if x > acc { x } else { acc })
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Parse a rational literal: `p/q` or plain integer `p`.
pub fn parse_scalar(s: &str) -> Result<Scalar, LinError> {
    let bad = || LinError::MalformedRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

/// Canonical text form: `p/q` in lowest terms with `q > 0`, or `p` when `q = 1`.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed rational literal {0:?}")]
    MalformedRational(String),
}

/// Proof that `m x = rhs` has no solution: `certificate · m = 0` while
/// `certificate · rhs = residue != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistency {
    pub certificate: Vector,
    /// Index of the right-hand side column that failed (0 for a single rhs).
    pub rhs_column: usize,
    pub residue: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Dimension(#[from] LinError),
    #[error("system is inconsistent")]
    Inconsistent(Inconsistency),
}

/// Rectangular dense matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self, LinError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinError::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, LinError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinError::DimensionMismatch {
                    expected: rows,
                    got: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers, used heavily in tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(cols, data).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinError> {
        if v.len() != self.cols {
            return Err(LinError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.cols != other.rows {
            return Err(LinError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> Scalar {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        max_abs(&sub(&self.data, &other.data))
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Result of Gauss-Jordan elimination on a copy of a matrix.
struct Echelon {
    reduced: Matrix,
    pivots: Vec<usize>,
}

/// Reduced row echelon form. Pivot is the first nonzero entry at or below the
/// current row; no magnitude-based pivoting.
fn rref(m: &Matrix) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in c..cols {
            let v = &a.data[r * cols + j] * &inv;
            a.data[r * cols + j] = v;
        }
        let pivot_row: Vector = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    let v = &a.data[i * cols + j] - &f * &pivot_row[j];
                    a.data[i * cols + j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { reduced: a, pivots }
}

/// Exact rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    rref(m).pivots.len()
}

/// Basis of the null space `{x : m x = 0}`. Empty means `m` is injective.
///
/// One basis vector per free column, with that free coordinate set to 1.
pub fn kernel(m: &Matrix) -> Vec<Vector> {
    let Echelon { reduced, pivots } = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![None; n];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
        let mut v = zeros(n);
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            let e = reduced.get(r, free);
            if !e.is_zero() {
                v[pc] = -e.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Row-reduced basis of the span of `vectors` (each of length `n`).
///
/// Two spans are equal iff their row-reduced bases are equal.
pub fn row_space(n: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(n, vectors.to_vec()).expect("row_space: ragged input");
    let Echelon { reduced, pivots } = rref(&m);
    (0..pivots.len()).map(|r| reduced.row(r).to_vec()).collect()
}

/// Solves `m X = rhs` for a matrix of right-hand sides. Free variables are set
/// to zero, so the returned solution is deterministic.
pub fn solve_many(m: &Matrix, rhs: &Matrix) -> Result<Matrix, SolveError> {
    if rhs.rows != m.rows {
        return Err(LinError::DimensionMismatch {
            expected: m.rows,
            got: rhs.rows,
        }
        .into());
    }
    let (rows, cols, k) = (m.rows, m.cols, rhs.cols);
    // [m | rhs | I]: the identity block records row operations, which is
    // where an inconsistency certificate comes from.
    let width = cols + k + rows;
    let mut aug = Matrix::zeros(rows, width);
    for r in 0..rows {
        for c in 0..cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        for c in 0..k {
            aug.set(r, cols + c, rhs.get(r, c).clone());
        }
        aug.set(r, cols + k + r, Scalar::one());
    }
    // Only pivot inside the coefficient block.
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !aug.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..width {
                aug.data.swap(p * width + j, r * width + j);
            }
        }
        let inv = aug.get(r, c).recip();
        for j in c..width {
            let v = &aug.data[r * width + j] * &inv;
            aug.data[r * width + j] = v;
        }
        let pivot_row = aug.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = aug.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..width {
                if !pivot_row[j].is_zero() {
                    let v = &aug.data[i * width + j] - &f * &pivot_row[j];
                    aug.data[i * width + j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // Rows below the last pivot have a zero coefficient block.
    for i in pivots.len()..rows {
        for c in 0..k {
            let residue = aug.get(i, cols + c);
            if !residue.is_zero() {
                let certificate = aug.row(i)[cols + k..].to_vec();
                return Err(SolveError::Inconsistent(Inconsistency {
                    certificate,
                    rhs_column: c,
                    residue: residue.clone(),
                }));
            }
        }
    }
    let mut x = Matrix::zeros(cols, k);
    for (row, &pc) in pivots.iter().enumerate() {
        for c in 0..k {
            x.set(pc, c, aug.get(row, cols + c).clone());
        }
    }
    Ok(x)
}

/// Solves `m x = rhs` for a single right-hand side.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Result<Vector, SolveError> {
    if rhs.len() != m.rows {
        return Err(LinError::DimensionMismatch {
            expected: m.rows,
            got: rhs.len(),
        }
        .into());
    }
    let rhs = Matrix::from_columns(m.rows, &[rhs.to_vec()])?;
    Ok(solve_many(m, &rhs)?.column(0))
}

/// Kronecker product. Row `(i, k)` of the result is `i * b.rows() + k`, and
/// likewise for columns, matching the `(i, j) -> i * dim + j` tensor order.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * b.rows + k, j * b.cols + l, x * y);
                    }
                }
            }
        }
    }
    out
}
