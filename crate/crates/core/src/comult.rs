//! The comultiplication as an exact linear map `A → A⊗A`, its Galois maps,
//! legs and opposite.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{FinDimAlgebra, Side};
use crate::exactlin::{rank, row_space, unit_vector, zeros, Matrix, Scalar, Vector};
use crate::tensor::{self, Factor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComultError {
    #[error("comultiplication matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("coassociativity fails on basis triple (b{a}, b{b}, b{c})")]
    NotCoassociative { a: usize, b: usize, c: usize },
    #[error("comultiplication is not multiplicative: Δ(b{x}·b{y}) != Δ(b{x})Δ(b{y})")]
    NotHomomorphism { x: usize, y: usize },
    #[error("comultiplication is not unital: Δ(1) != 1⊗1")]
    NotUnital,
}

/// The four Galois maps on `A⊗A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaloisKind {
    /// `a⊗b ↦ Δ(a)(1⊗b)`
    T1,
    /// `a⊗b ↦ (a⊗1)Δ(b)`
    T2,
    /// `a⊗b ↦ Δ(a)(b⊗1)`
    T1Prime,
    /// `a⊗b ↦ (1⊗a)Δ(b)`
    T2Prime,
}

impl GaloisKind {
    pub const ALL: [GaloisKind; 4] = [
        GaloisKind::T1,
        GaloisKind::T2,
        GaloisKind::T1Prime,
        GaloisKind::T2Prime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GaloisKind::T1 => "T1",
            GaloisKind::T2 => "T2",
            GaloisKind::T1Prime => "T1'",
            GaloisKind::T2Prime => "T2'",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            GaloisKind::T1 => "a⊗b ↦ Δ(a)(1⊗b)",
            GaloisKind::T2 => "a⊗b ↦ (a⊗1)Δ(b)",
            GaloisKind::T1Prime => "a⊗b ↦ Δ(a)(b⊗1)",
            GaloisKind::T2Prime => "a⊗b ↦ (1⊗a)Δ(b)",
        }
    }
}

impl fmt::Display for GaloisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a leg is taken of.
#[derive(Debug, Clone, Copy)]
pub enum LegTarget<'a> {
    /// The whole comultiplication, i.e. the span over all `Δ(a)`.
    Whole,
    Element(&'a [Scalar]),
}

/// Which slice products generate a leg. `Standard` uses `Δ(a)(1⊗b)` for the
/// left leg and `(b⊗1)Δ(a)` for the right; `Opposite` uses `(1⊗b)Δ(a)` and
/// `Δ(a)(b⊗1)`. For a regular comultiplication both give the same subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceForm {
    Standard,
    Opposite,
}

/// A subspace of `A`, stored as its row-reduced basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vector>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_everything(&self) -> bool {
        self.basis.len() == self.ambient
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    /// Unital algebra: `M(A⊗A) = A⊗A`, so every slice lands in `A⊗A`.
    AutomaticUnital,
    /// Non-unital but finite-dimensional: `Δ` maps into `A⊗A` itself.
    AutomaticFiniteDimensional,
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularity::AutomaticUnital => f.write_str("regular: automatic (unital)"),
            Regularity::AutomaticFiniteDimensional => {
                f.write_str("regular: automatic (Δ maps into A⊗A)")
            }
        }
    }
}

/// A validated comultiplication on a finite-dimensional algebra.
///
/// `delta` has shape `dim² × dim`; column `i` holds `Δ(b_i)` in the `b_j⊗b_k` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComultMatrix {
    algebra: FinDimAlgebra,
    delta: Matrix,
    columns: Vec<Vector>,
}

impl ComultMatrix {
    pub fn validate(
        algebra: FinDimAlgebra,
        delta: Matrix,
        require_homomorphism: bool,
    ) -> Result<Self, ComultError> {
        let n = algebra.dim();
        if delta.rows() != n * n || delta.cols() != n {
            return Err(ComultError::Shape {
                rows: delta.rows(),
                cols: delta.cols(),
                expected_rows: n * n,
                expected_cols: n,
            });
        }
        let columns = (0..n).map(|i| delta.column(i)).collect();
        let cm = Self {
            algebra,
            delta,
            columns,
        };
        if let Some((a, b, c)) = cm.coassociativity_witness() {
            return Err(ComultError::NotCoassociative { a, b, c });
        }
        if require_homomorphism {
            if let Some((x, y)) = cm.multiplicativity_witness() {
                return Err(ComultError::NotHomomorphism { x, y });
            }
            if let Some(u) = cm.algebra.unit() {
                if cm.apply(u) != tensor::pure(n, u, u) {
                    return Err(ComultError::NotUnital);
                }
            }
        }
        Ok(cm)
    }

    /// Builds `Δ` from `(i, j, k, c)`: coefficient `c` of `b_j⊗b_k` in `Δ(b_i)`.
    pub fn from_entries(
        algebra: FinDimAlgebra,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        require_homomorphism: bool,
    ) -> Result<Self, ComultError> {
        let n = algebra.dim();
        let mut delta = Matrix::zeros(n * n, n);
        for (i, j, k, c) in entries {
            let cur = delta.get(j * n + k, i) + c;
            delta.set(j * n + k, i, cur);
        }
        Self::validate(algebra, delta, require_homomorphism)
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn delta_basis(&self, i: usize) -> &[Scalar] {
        &self.columns[i]
    }

    /// `Δ(x)` for a coordinate vector `x`.
    pub fn apply(&self, x: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n);
        for (i, xi) in x.iter().enumerate() {
            crate::exactlin::axpy(&mut out, xi, &self.columns[i]);
        }
        out
    }

    /// `(Δ⊗ι)(t)` for `t ∈ A⊗A`, as a 3-tensor.
    fn delta_first(&self, t: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n * n);
        for (idx, coef) in t.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (i, j) = (idx / n, idx % n);
            for (pq, d) in self.columns[i].iter().enumerate() {
                if !d.is_zero() {
                    out[pq * n + j] += coef * d;
                }
            }
        }
        out
    }

    /// `(ι⊗Δ)(t)` for `t ∈ A⊗A`, as a 3-tensor.
    fn delta_second(&self, t: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n * n);
        for (idx, coef) in t.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (i, j) = (idx / n, idx % n);
            for (qr, d) in self.columns[j].iter().enumerate() {
                if !d.is_zero() {
                    out[i * n * n + qr] += coef * d;
                }
            }
        }
        out
    }

    /// First basis triple `(a, b, c)` where
    /// `(a⊗1⊗1)(Δ⊗ι)(Δ(b)(1⊗c)) = (ι⊗Δ)((a⊗1)Δ(b))(1⊗1⊗c)` fails.
    fn coassociativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let consts = self.algebra.constants();
        let basis: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        // (Δ⊗ι)(Δ(b)(1⊗c)) for every (b, c)
        let inner: Vec<Vector> = (0..n * n)
            .map(|bc| {
                let t = tensor::right_mul(consts, &self.columns[bc / n], &basis[bc % n], Factor::Second);
                self.delta_first(&t)
            })
            .collect();
        // (ι⊗Δ)((a⊗1)Δ(b)) for every (a, b)
        let outer: Vec<Vector> = (0..n * n)
            .map(|ab| {
                let t = tensor::left_mul(consts, &basis[ab / n], Factor::First, &self.columns[ab % n]);
                self.delta_second(&t)
            })
            .collect();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = left_mul3_first(consts, a, &inner[b * n + c]);
                    let rhs = right_mul3_third(consts, &outer[a * n + b], c);
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    fn multiplicativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        let consts = self.algebra.constants();
        for x in 0..n {
            for y in 0..n {
                let prod = self.algebra.multiply(&unit_vector(n, x), &unit_vector(n, y));
                let lhs = self.apply(&prod);
                let rhs = tensor::mul(consts, &self.columns[x], &self.columns[y]);
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Image of `a⊗b` under a Galois map.
    pub fn galois_apply(&self, kind: GaloisKind, a: &[Scalar], b: &[Scalar]) -> Vector {
        let consts = self.algebra.constants();
        match kind {
            GaloisKind::T1 => tensor::right_mul(consts, &self.apply(a), b, Factor::Second),
            GaloisKind::T2 => tensor::left_mul(consts, a, Factor::First, &self.apply(b)),
            GaloisKind::T1Prime => tensor::right_mul(consts, &self.apply(a), b, Factor::First),
            GaloisKind::T2Prime => tensor::left_mul(consts, a, Factor::Second, &self.apply(b)),
        }
    }

    /// Image of a general tensor under a Galois map.
    pub fn galois_apply_tensor(&self, kind: GaloisKind, t: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n);
        for (idx, coef) in t.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let img = self.galois_apply(kind, &unit_vector(n, idx / n), &unit_vector(n, idx % n));
            crate::exactlin::axpy(&mut out, coef, &img);
        }
        out
    }

    /// Matrix of a Galois map in the row-major tensor basis (`dim² × dim²`).
    pub fn galois_matrix(&self, kind: GaloisKind) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n * n)
            .map(|ij| self.galois_apply(kind, &unit_vector(n, ij / n), &unit_vector(n, ij % n)))
            .collect();
        Matrix::from_columns(n * n, &cols).expect("columns have length dim²")
    }

    pub fn galois_rank(&self, kind: GaloisKind) -> usize {
        rank(&self.galois_matrix(kind))
    }

    /// Slice vectors generating a leg of a single tensor `Δ(a)`.
    fn leg_generators(&self, side: Side, form: SliceForm, delta_a: &[Scalar], out: &mut Vec<Vector>) {
        let n = self.dim();
        let consts = self.algebra.constants();
        for j in 0..n {
            let b = unit_vector(n, j);
            let t = match (side, form) {
                (Side::Left, SliceForm::Standard) => tensor::right_mul(consts, delta_a, &b, Factor::Second),
                (Side::Left, SliceForm::Opposite) => tensor::left_mul(consts, &b, Factor::Second, delta_a),
                (Side::Right, SliceForm::Standard) => tensor::left_mul(consts, &b, Factor::First, delta_a),
                (Side::Right, SliceForm::Opposite) => tensor::right_mul(consts, delta_a, &b, Factor::First),
            };
            // Applying every coordinate functional ω = e_l^* to the other factor.
            for l in 0..n {
                let v: Vector = match side {
                    Side::Left => (0..n).map(|k| t[k * n + l].clone()).collect(),
                    Side::Right => (0..n).map(|k| t[l * n + k].clone()).collect(),
                };
                if !crate::exactlin::is_zero_vector(&v) {
                    out.push(v);
                }
            }
        }
    }

    /// The left or right leg as the span of slices `(ι⊗ω)(Δ(a)(1⊗b))`
    /// (resp. `(ω⊗ι)((b⊗1)Δ(a))`) over basis `b` and coordinate functionals `ω`.
    pub fn leg(&self, side: Side, target: LegTarget<'_>) -> Subspace {
        self.leg_with(side, target, SliceForm::Standard)
    }

    pub fn leg_with(&self, side: Side, target: LegTarget<'_>, form: SliceForm) -> Subspace {
        let n = self.dim();
        let mut gens = Vec::new();
        match target {
            LegTarget::Whole => {
                for i in 0..n {
                    self.leg_generators(side, form, &self.columns[i], &mut gens);
                }
            }
            LegTarget::Element(a) => {
                let d = self.apply(a);
                self.leg_generators(side, form, &d, &mut gens);
            }
        }
        Subspace {
            ambient: n,
            basis: row_space(n, &gens),
        }
    }

    /// Both legs of `Δ` are all of `A`.
    pub fn is_full(&self) -> bool {
        self.leg(Side::Left, LegTarget::Whole).is_everything()
            && self.leg(Side::Right, LegTarget::Whole).is_everything()
    }

    /// `Δ' = σ∘Δ`, re-validated.
    pub fn opposite(&self) -> Result<ComultMatrix, ComultError> {
        let n = self.dim();
        let cols: Vec<Vector> = self.columns.iter().map(|c| tensor::flip(n, c)).collect();
        let delta = Matrix::from_columns(n * n, &cols).expect("flip preserves length");
        let require_hom = self.algebra.is_unital();
        ComultMatrix::validate(self.algebra.clone(), delta, require_hom)
    }

    pub fn regularity_note(&self) -> Regularity {
        if self.algebra.is_unital() {
            Regularity::AutomaticUnital
        } else {
            Regularity::AutomaticFiniteDimensional
        }
    }
}

/// `(b_a⊗1⊗1)·t` for a 3-tensor `t`.
fn left_mul3_first(c: &crate::algebra::StructureConstants, a: usize, t: &[Scalar]) -> Vector {
    let n = c.dim();
    let mut out = zeros(n * n * n);
    for (idx, coef) in t.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let i = idx / (n * n);
        let rest = idx % (n * n);
        for (k, p) in c.basis_product(a, i) {
            out[k * n * n + rest] += coef * p;
        }
    }
    out
}

/// `t·(1⊗1⊗b_c)` for a 3-tensor `t`.
fn right_mul3_third(c: &crate::algebra::StructureConstants, t: &[Scalar], b: usize) -> Vector {
    let n = c.dim();
    let mut out = zeros(n * n * n);
    for (idx, coef) in t.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let (head, k) = (idx / n, idx % n);
        for (m, p) in c.basis_product(k, b) {
            out[head * n + m] += coef * p;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StructureConstants;
    use crate::exactlin::int;

    fn c2_algebra() -> FinDimAlgebra {
        let c = StructureConstants::from_entries(
            2,
            [
                (0, 0, 0, int(1)),
                (0, 1, 1, int(1)),
                (1, 0, 1, int(1)),
                (1, 1, 0, int(1)),
            ],
        );
        FinDimAlgebra::validate(vec!["e".into(), "s".into()], c, None).unwrap()
    }

    fn group_like(alg: FinDimAlgebra) -> Result<ComultMatrix, ComultError> {
        let n = alg.dim();
        ComultMatrix::from_entries(alg, (0..n).map(|i| (i, i, i, int(1))), true)
    }

    #[test]
    fn c2_group_like_is_valid_and_cocommutative() {
        let cm = group_like(c2_algebra()).unwrap();
        assert_eq!(cm.opposite().unwrap(), cm);
        assert!(cm.is_full());
        assert_eq!(cm.regularity_note(), Regularity::AutomaticUnital);
        assert_eq!(cm.regularity_note().to_string(), "regular: automatic (unital)");
        for kind in GaloisKind::ALL {
            assert_eq!(cm.galois_rank(kind), 4, "{kind}");
        }
    }

    #[test]
    fn planted_bad_delta_is_rejected() {
        // Δ(s) = s⊗s + e⊗e
        let err = ComultMatrix::from_entries(
            c2_algebra(),
            [(0, 0, 0, int(1)), (1, 1, 1, int(1)), (1, 0, 0, int(1))],
            true,
        )
        .unwrap_err();
        assert!(matches!(err, ComultError::NotCoassociative { .. }));
    }

    #[test]
    fn one_sided_delta_is_a_valid_comultiplication() {
        // Δ(s) = s⊗e is the homomorphism g ↦ g⊗e: coassociative and multiplicative,
        // but its right leg is only span{e}.
        let cm = ComultMatrix::from_entries(
            c2_algebra(),
            [(0, 0, 0, int(1)), (1, 1, 0, int(1))],
            true,
        )
        .unwrap();
        assert!(cm.leg(Side::Left, LegTarget::Whole).is_everything());
        assert_eq!(cm.leg(Side::Right, LegTarget::Whole).dim(), 1);
        assert!(!cm.is_full());
    }

    #[test]
    fn wrong_shape() {
        let err = ComultMatrix::validate(c2_algebra(), Matrix::zeros(3, 2), true).unwrap_err();
        assert!(matches!(err, ComultError::Shape { .. }));
    }

    #[test]
    fn non_unital_delta_rejected() {
        // Δ(e) = 0 is coassociative but Δ(1) != 1⊗1 and not multiplicative
        let err = ComultMatrix::from_entries(c2_algebra(), [(1, 1, 1, int(1))], true).unwrap_err();
        assert!(matches!(
            err,
            ComultError::NotHomomorphism { .. } | ComultError::NotUnital
        ));
    }

    #[test]
    fn one_dim_is_full() {
        let c = StructureConstants::from_entries(1, [(0, 0, 0, int(1))]);
        let alg = FinDimAlgebra::validate(vec!["b".into()], c, None).unwrap();
        let cm = group_like(alg).unwrap();
        assert!(cm.is_full());
    }
}
