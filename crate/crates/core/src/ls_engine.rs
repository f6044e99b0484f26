//! Hopf structure from a faithful left integral.
//!
//! Given a unital finite-dimensional algebra with a comultiplication whose left
//! leg is all of `A`, a faithful left integral `φ` forces bijective Galois maps.
//! The counit and antipode are then recovered from the slices
//! `x = (ι⊗φ)(Δ(a)(1⊗b))` through
//!
//! ```text
//! ε(x) = φ(ab)        S(x) = (ι⊗φ)((1⊗a)Δ(b))
//! ```
//!
//! Both are solved as global exact linear systems over all basis pairs; the
//! well-definedness of each formula is exactly the consistency of its system.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Side;
use crate::comult::{ComultMatrix, GaloisKind, LegTarget, Regularity};
use crate::exactlin::{
    is_zero_vector, kernel, max_abs, rank, solve_many, sub, zeros, Inconsistency, Matrix, Scalar,
    SolveError, Vector,
};
use crate::integrals::{
    find_faithful, gram_matrix, invariant_space, is_faithful, is_invariant, LinearFunctional,
    SearchOutcome,
};
use crate::tensor::{self, Factor};

/// The antipode as a coordinate matrix; column `j` is `S(b_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AntipodeMap(pub Matrix);

impl AntipodeMap {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.0.mul_vec(x).expect("antipode applied to a vector of the right length")
    }

    pub fn is_invertible(&self) -> bool {
        rank(&self.0) == self.0.rows()
    }

    pub fn power(&self, k: u32) -> Matrix {
        let mut m = Matrix::identity(self.0.rows());
        for _ in 0..k {
            m = m.mul(&self.0).expect("square");
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    /// The defining formula is not well defined: two presentations of the same
    /// element give different values.
    #[error("defining system is inconsistent (formula not well defined)")]
    InconsistentSystem(Inconsistency),
    /// The slices do not span `A`, so the formula does not determine the map everywhere.
    #[error("defining system is underdetermined: slices span {rank} of {dim} dimensions")]
    UnderdeterminedSystem { rank: usize, dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// One of the Hopf-structure identities checked by [`verify_structure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    CounitMultiplicative,
    CounitLeft,
    CounitRight,
    AntipodeAntiMultiplicative,
    AntipodeComultiplication,
    AntipodeRightConvolution,
    AntipodeLeftConvolution,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::CounitMultiplicative,
        IdentityId::CounitLeft,
        IdentityId::CounitRight,
        IdentityId::AntipodeAntiMultiplicative,
        IdentityId::AntipodeComultiplication,
        IdentityId::AntipodeRightConvolution,
        IdentityId::AntipodeLeftConvolution,
    ];

    pub fn formula(self) -> &'static str {
        match self {
            IdentityId::CounitMultiplicative => "ε(ab) = ε(a)ε(b)",
            IdentityId::CounitLeft => "(ε⊗ι)Δ(a) = a",
            IdentityId::CounitRight => "(ι⊗ε)Δ(a) = a",
            IdentityId::AntipodeAntiMultiplicative => "S(ab) = S(b)S(a)",
            IdentityId::AntipodeComultiplication => "(S⊗S)Δ(a) = σΔ(S(a))",
            IdentityId::AntipodeRightConvolution => "m(ι⊗S)Δ(a) = ε(a)1",
            IdentityId::AntipodeLeftConvolution => "m(S⊗ι)Δ(a) = ε(a)1",
        }
    }

    /// The notion whose defining property this identity is.
    pub fn concept(self) -> &'static str {
        match self {
            IdentityId::CounitMultiplicative | IdentityId::CounitLeft | IdentityId::CounitRight => {
                "counit"
            }
            _ => "antipode",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            IdentityId::CounitMultiplicative => "counit_multiplicative",
            IdentityId::CounitLeft => "counit_left",
            IdentityId::CounitRight => "counit_right",
            IdentityId::AntipodeAntiMultiplicative => "antipode_anti_multiplicative",
            IdentityId::AntipodeComultiplication => "antipode_comultiplication",
            IdentityId::AntipodeRightConvolution => "antipode_right_convolution",
            IdentityId::AntipodeLeftConvolution => "antipode_left_convolution",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: IdentityId,
    /// Largest absolute residual entry over all basis elements/pairs.
    pub max_residual: Scalar,
    /// First basis index tuple with nonzero residual.
    pub witness: Option<Vec<usize>>,
    /// False when the identity needs a unit the algebra does not have.
    pub applicable: bool,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        !self.applicable || self.max_residual.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub checks: Vec<IdentityCheck>,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.holds())
    }

    pub fn get(&self, id: IdentityId) -> &IdentityCheck {
        self.checks.iter().find(|c| c.id == id).expect("all identities are checked")
    }
}

/// Why a comultiplication is not (or could not be shown to be) Hopf, attributed
/// to the first hypothesis that broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedHypothesis {
    NonUnital,
    LeftLegNotFull,
    RightLegNotFull,
    NoLeftIntegral,
    NoFaithfulLeftIntegral,
    GaloisNotBijective(GaloisKind),
    CounitNotDetermined,
    AntipodeNotDetermined,
    IdentityFailed(IdentityId),
    NoLeftCointegral,
    CointegralNotFaithful,
}

impl FailedHypothesis {
    pub fn reason(self) -> String {
        match self {
            FailedHypothesis::NonUnital => "algebra has no unit".into(),
            FailedHypothesis::LeftLegNotFull => "left leg of Δ is not all of A".into(),
            FailedHypothesis::RightLegNotFull => "right leg of Δ is not all of A".into(),
            FailedHypothesis::NoLeftIntegral => "no left integral".into(),
            FailedHypothesis::NoFaithfulLeftIntegral => "no faithful left integral".into(),
            FailedHypothesis::GaloisNotBijective(k) => format!("Galois map {k} is not bijective"),
            FailedHypothesis::CounitNotDetermined => "counit is not determined by the slices".into(),
            FailedHypothesis::AntipodeNotDetermined => {
                "antipode is not determined by the slices".into()
            }
            FailedHypothesis::IdentityFailed(id) => format!("identity {} fails", id.formula()),
            FailedHypothesis::NoLeftCointegral => "no left cointegral".into(),
            FailedHypothesis::CointegralNotFaithful => {
                "a left cointegral exists but none is faithful".into()
            }
        }
    }

    /// Name of the violated definition.
    pub fn definition(self) -> &'static str {
        match self {
            FailedHypothesis::NonUnital => "unital algebra",
            FailedHypothesis::LeftLegNotFull | FailedHypothesis::RightLegNotFull => {
                "full comultiplication (legs of Δ)"
            }
            FailedHypothesis::NoLeftIntegral => "left integral (left invariant functional)",
            FailedHypothesis::NoFaithfulLeftIntegral => "faithful functional",
            FailedHypothesis::GaloisNotBijective(_) => "multiplier Hopf algebra (bijective Galois maps)",
            FailedHypothesis::CounitNotDetermined => "counit",
            FailedHypothesis::AntipodeNotDetermined => "antipode",
            FailedHypothesis::IdentityFailed(id) => id.concept(),
            FailedHypothesis::NoLeftCointegral => "left cointegral",
            FailedHypothesis::CointegralNotFaithful => "faithful cointegral",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            FailedHypothesis::NonUnital => "non_unital",
            FailedHypothesis::LeftLegNotFull => "left_leg_not_full",
            FailedHypothesis::RightLegNotFull => "right_leg_not_full",
            FailedHypothesis::NoLeftIntegral => "no_left_integral",
            FailedHypothesis::NoFaithfulLeftIntegral => "no_faithful_left_integral",
            FailedHypothesis::GaloisNotBijective(_) => "galois_not_bijective",
            FailedHypothesis::CounitNotDetermined => "counit_not_determined",
            FailedHypothesis::AntipodeNotDetermined => "antipode_not_determined",
            FailedHypothesis::IdentityFailed(_) => "identity_failed",
            FailedHypothesis::NoLeftCointegral => "no_left_cointegral",
            FailedHypothesis::CointegralNotFaithful => "cointegral_not_faithful",
        }
    }
}

impl fmt::Display for FailedHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (violates: {})", self.reason(), self.definition())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Hopf {
        epsilon: LinearFunctional,
        antipode: AntipodeMap,
    },
    NotHopf {
        failure: FailedHypothesis,
        witness: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl Verdict {
    pub fn key(&self) -> &'static str {
        match self {
            Verdict::Hopf { .. } => "hopf",
            Verdict::NotHopf { .. } => "not_hopf",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_hopf(&self) -> bool {
        matches!(self, Verdict::Hopf { .. })
    }
}

/// `(ι⊗φ)(Δ(a)(1⊗b))`.
pub fn left_slice(cm: &ComultMatrix, phi: &LinearFunctional, a: &[Scalar], b: &[Scalar]) -> Vector {
    let t = tensor::right_mul(cm.algebra().constants(), &cm.apply(a), b, Factor::Second);
    tensor::slice_second(cm.dim(), &t, phi.coords())
}

/// `(ι⊗φ)((1⊗a)Δ(b))`.
pub fn antipode_slice(
    cm: &ComultMatrix,
    phi: &LinearFunctional,
    a: &[Scalar],
    b: &[Scalar],
) -> Vector {
    let t = tensor::left_mul(cm.algebra().constants(), a, Factor::Second, &cm.apply(b));
    tensor::slice_second(cm.dim(), &t, phi.coords())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Implication {
    pub premise: String,
    pub conclusion: String,
    /// Whether the premise holds for this input.
    pub applies: bool,
    /// Whether the conclusion holds for this input.
    pub holds: bool,
}

impl Implication {
    pub fn violated(&self) -> bool {
        self.applies && !self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisReport {
    /// `dim²`, the rank of a bijective Galois map.
    pub size: usize,
    pub ranks: Vec<(GaloisKind, usize)>,
    pub implications: Vec<Implication>,
}

impl GaloisReport {
    pub fn rank(&self, kind: GaloisKind) -> usize {
        self.ranks.iter().find(|(k, _)| *k == kind).map(|(_, r)| *r).expect("all kinds")
    }

    pub fn bijective(&self, kind: GaloisKind) -> bool {
        self.rank(kind) == self.size
    }

    pub fn all_bijective(&self) -> bool {
        self.ranks.iter().all(|(_, r)| *r == self.size)
    }
}

/// Ranks of all four Galois maps, cross-checked against what faithful
/// integrals imply:
///
/// * faithful right integral ⇒ `T1` and `T2'` injective;
/// * faithful left integral ⇒ `T2` and `T1'` injective;
/// * faithful left integral and full left leg ⇒ `T1` surjective;
/// * faithful left and right integrals and full `Δ` ⇒ all four surjective.
pub fn galois_bijectivity_report(
    cm: &ComultMatrix,
    phi: Option<&LinearFunctional>,
    psi: Option<&LinearFunctional>,
) -> GaloisReport {
    let n = cm.dim();
    let size = n * n;
    let ranks: Vec<(GaloisKind, usize)> =
        GaloisKind::ALL.iter().map(|&k| (k, cm.galois_rank(k))).collect();
    let full = |k: GaloisKind| ranks.iter().any(|&(kk, r)| kk == k && r == size);
    let alg = cm.algebra();
    let phi_faithful = phi.is_some_and(|f| !f.is_zero() && is_faithful(alg, f));
    let psi_faithful = psi.is_some_and(|f| !f.is_zero() && is_faithful(alg, f));
    let left_full = cm.leg(Side::Left, LegTarget::Whole).is_everything();
    let right_full = cm.leg(Side::Right, LegTarget::Whole).is_everything();

    let imp = |premise: &str, conclusion: String, applies: bool, holds: bool| Implication {
        premise: premise.to_string(),
        conclusion,
        applies,
        holds,
    };
    let injective = |k: GaloisKind| format!("{k} injective");
    let mut implications = vec![
        imp("faithful right integral", injective(GaloisKind::T1), psi_faithful, full(GaloisKind::T1)),
        imp("faithful right integral", injective(GaloisKind::T2Prime), psi_faithful, full(GaloisKind::T2Prime)),
        imp("faithful left integral", injective(GaloisKind::T2), phi_faithful, full(GaloisKind::T2)),
        imp("faithful left integral", injective(GaloisKind::T1Prime), phi_faithful, full(GaloisKind::T1Prime)),
        imp(
            "faithful left integral + full left leg",
            "T1 surjective".to_string(),
            phi_faithful && left_full,
            full(GaloisKind::T1),
        ),
    ];
    implications.push(imp(
        "faithful left and right integrals + full Δ",
        "all four Galois maps surjective".to_string(),
        phi_faithful && psi_faithful && left_full && right_full,
        GaloisKind::ALL.iter().all(|&k| full(k)),
    ));
    GaloisReport {
        size,
        ranks,
        implications,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T1Preimage {
    /// `x = (ι⊗φ)(Δ(a)(1⊗b))`
    pub x: Vector,
    /// `y = (ι⊗ι⊗φ)(Δ13(a)Δ23(b)(1⊗c⊗1))`, with `T1(y) = x⊗c`.
    pub y: Vector,
}

/// Explicit preimage of `x⊗c` under `T1`, verified before returning.
///
/// Writing `Δ(a) = Σ a₁⊗a₂` and `Δ(b) = Σ b₁⊗b₂`, the product
/// `Δ13(a)Δ23(b)(1⊗c⊗1)` is `Σ a₁ ⊗ b₁c ⊗ a₂b₂`, so `y = Σ φ(a₂b₂) a₁ ⊗ b₁c`.
pub fn t1_preimage(
    cm: &ComultMatrix,
    phi: &LinearFunctional,
    a: &[Scalar],
    b: &[Scalar],
    c: &[Scalar],
) -> Result<T1Preimage, EngineError> {
    let n = cm.dim();
    let alg = cm.algebra();
    let da = cm.apply(a);
    let db = cm.apply(b);
    let mut y = zeros(n * n);
    for (pq, alpha) in da.iter().enumerate() {
        if alpha.is_zero() {
            continue;
        }
        let (p, q) = (pq / n, pq % n);
        for (rs, beta) in db.iter().enumerate() {
            if beta.is_zero() {
                continue;
            }
            let (r, s) = (rs / n, rs % n);
            let phi_qs: Scalar = alg
                .constants()
                .basis_product(q, s)
                .iter()
                .map(|(k, m)| m * &phi.coords()[*k])
                .sum();
            if phi_qs.is_zero() {
                continue;
            }
            let w = alpha * beta * phi_qs;
            let rc = alg.multiply(&alg.basis(r), c);
            for (k, v) in rc.iter().enumerate() {
                if !v.is_zero() {
                    y[p * n + k] += &w * v;
                }
            }
        }
    }
    let x = left_slice(cm, phi, a, b);
    let image = cm.galois_apply_tensor(GaloisKind::T1, &y);
    if image != tensor::pure(n, &x, c) {
        return Err(EngineError::VerificationFailed(
            "T1(y) != x⊗c; the functional is not left invariant".to_string(),
        ));
    }
    Ok(T1Preimage { x, y })
}

/// Rows `x_ij = (ι⊗φ)(Δ(b_i)(1⊗b_j))` for all basis pairs, in `(i, j)` order.
fn slice_rows(cm: &ComultMatrix, phi: &LinearFunctional) -> Vec<Vector> {
    let n = cm.dim();
    let alg = cm.algebra();
    (0..n * n)
        .map(|ij| left_slice(cm, phi, &alg.basis(ij / n), &alg.basis(ij % n)))
        .collect()
}

fn solve_slice_system(rows: Vec<Vector>, rhs: Matrix, n: usize) -> Result<Matrix, ConstructionError> {
    let m = Matrix::from_rows(n, rows).expect("slice rows have length dim");
    let r = rank(&m);
    let solution = solve_many(&m, &rhs).map_err(|e| match e {
        SolveError::Inconsistent(w) => ConstructionError::InconsistentSystem(w),
        SolveError::Dimension(_) => unreachable!("system assembled with matching shapes"),
    })?;
    if r < n {
        return Err(ConstructionError::UnderdeterminedSystem { rank: r, dim: n });
    }
    Ok(solution)
}

/// `ε` from `ε((ι⊗φ)(Δ(a)(1⊗b))) = φ(ab)`, solved over all basis pairs.
pub fn construct_counit(
    cm: &ComultMatrix,
    phi: &LinearFunctional,
) -> Result<LinearFunctional, ConstructionError> {
    let n = cm.dim();
    let alg = cm.algebra();
    let rows = slice_rows(cm, phi);
    let rhs: Vec<Vector> = (0..n * n)
        .map(|ij| vec![phi.apply(&alg.multiply(&alg.basis(ij / n), &alg.basis(ij % n)))])
        .collect();
    let rhs = Matrix::from_rows(1, rhs).expect("one column");
    let sol = solve_slice_system(rows, rhs, n)?;
    Ok(LinearFunctional(sol.column(0)))
}

/// `S` from `S((ι⊗φ)(Δ(a)(1⊗b))) = (ι⊗φ)((1⊗a)Δ(b))`, i.e. `S·X = Y` with
/// columns indexed by basis pairs. Solved in transposed form `Xᵀ Sᵀ = Yᵀ`.
pub fn construct_antipode(
    cm: &ComultMatrix,
    phi: &LinearFunctional,
) -> Result<AntipodeMap, ConstructionError> {
    let n = cm.dim();
    let alg = cm.algebra();
    let rows = slice_rows(cm, phi);
    let rhs: Vec<Vector> = (0..n * n)
        .map(|ij| antipode_slice(cm, phi, &alg.basis(ij / n), &alg.basis(ij % n)))
        .collect();
    let rhs = Matrix::from_rows(n, rhs).expect("rhs rows have length dim");
    let st = solve_slice_system(rows, rhs, n)?;
    Ok(AntipodeMap(st.transpose()))
}

fn record(
    id: IdentityId,
    residuals: impl IntoIterator<Item = (Vec<usize>, Vector)>,
) -> IdentityCheck {
    let mut max = Scalar::zero();
    let mut witness = None;
    for (idx, r) in residuals {
        let m = max_abs(&r);
        if !m.is_zero() && witness.is_none() {
            witness = Some(idx);
        }
        if m > max {
            max = m;
        }
    }
    IdentityCheck {
        id,
        max_residual: max,
        witness,
        applicable: true,
    }
}

/// Checks every counit and antipode identity on all basis elements and pairs.
pub fn verify_structure(
    cm: &ComultMatrix,
    epsilon: &LinearFunctional,
    antipode: &AntipodeMap,
) -> StructureReport {
    let n = cm.dim();
    let alg = cm.algebra();
    let consts = alg.constants();
    let basis: Vec<Vector> = (0..n).map(|i| alg.basis(i)).collect();
    let s_of = |j: usize| antipode.0.column(j);
    let eps_vec = epsilon.coords().to_vec();
    let mut checks = Vec::new();

    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));

    checks.push(record(
        IdentityId::CounitMultiplicative,
        pairs().map(|(i, j)| {
            let lhs = epsilon.apply(&alg.multiply(&basis[i], &basis[j]));
            let rhs = &eps_vec[i] * &eps_vec[j];
            (vec![i, j], vec![lhs - rhs])
        }),
    ));
    checks.push(record(
        IdentityId::CounitLeft,
        (0..n).map(|i| {
            let v = tensor::slice_first(n, &eps_vec, cm.delta_basis(i));
            (vec![i], sub(&v, &basis[i]))
        }),
    ));
    checks.push(record(
        IdentityId::CounitRight,
        (0..n).map(|i| {
            let v = tensor::slice_second(n, cm.delta_basis(i), &eps_vec);
            (vec![i], sub(&v, &basis[i]))
        }),
    ));
    checks.push(record(
        IdentityId::AntipodeAntiMultiplicative,
        pairs().map(|(i, j)| {
            let lhs = antipode.apply(&alg.multiply(&basis[i], &basis[j]));
            let rhs = alg.multiply(&s_of(j), &s_of(i));
            (vec![i, j], sub(&lhs, &rhs))
        }),
    ));
    checks.push(record(
        IdentityId::AntipodeComultiplication,
        (0..n).map(|i| {
            let lhs = tensor::map_each(n, cm.delta_basis(i), s_of, s_of);
            let rhs = tensor::flip(n, &cm.apply(&s_of(i)));
            (vec![i], sub(&lhs, &rhs))
        }),
    ));

    let unit = alg.unit().map(<[Scalar]>::to_vec);
    for (id, s_first) in [
        (IdentityId::AntipodeRightConvolution, false),
        (IdentityId::AntipodeLeftConvolution, true),
    ] {
        match &unit {
            Some(u) => checks.push(record(
                id,
                (0..n).map(|i| {
                    let d = cm.delta_basis(i);
                    let mapped = if s_first {
                        tensor::map_each(n, d, s_of, |j| basis[j].clone())
                    } else {
                        tensor::map_each(n, d, |j| basis[j].clone(), s_of)
                    };
                    let lhs = tensor::multiply_out(consts, &mapped);
                    let rhs = crate::exactlin::scale(u, &eps_vec[i]);
                    (vec![i], sub(&lhs, &rhs))
                }),
            )),
            None => checks.push(IdentityCheck {
                id,
                max_residual: Scalar::zero(),
                witness: None,
                applicable: false,
            }),
        }
    }
    StructureReport { checks }
}

/// Kernel dimensions of the homogeneous systems behind the uniqueness of the
/// counit and antipode. Zero means the identity determines the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniquenessReport {
    /// `(ε⊗ι)Δ = ι` as a system in `ε`.
    pub counit_left: usize,
    /// `(ι⊗ε)Δ = ι` as a system in `ε`.
    pub counit_right: usize,
    /// `m(R⊗ι)Δ = ε(·)1` as a system in `R`.
    pub antipode_left: usize,
    /// `m(ι⊗R)Δ = ε(·)1` as a system in `R`.
    pub antipode_right: usize,
}

pub fn uniqueness_report(cm: &ComultMatrix) -> UniquenessReport {
    let n = cm.dim();
    let consts = cm.algebra().constants();
    let counit = |first: bool| {
        let mut m = Matrix::zeros(n * n, n);
        for a in 0..n {
            let d = cm.delta_basis(a);
            for j in 0..n {
                for k in 0..n {
                    let (var, out) = if first { (j, k) } else { (k, j) };
                    let c = &d[j * n + k];
                    if !c.is_zero() {
                        let cur = m.get(a * n + out, var) + c;
                        m.set(a * n + out, var, cur);
                    }
                }
            }
        }
        kernel(&m).len()
    };
    // Unknown R[m][k]: coefficient of b_m in R(b_k), variable index m*n + k.
    let antipode = |first: bool| {
        let mut sys = Matrix::zeros(n * n, n * n);
        for a in 0..n {
            let d = cm.delta_basis(a);
            for k in 0..n {
                for l in 0..n {
                    let c = &d[k * n + l];
                    if c.is_zero() {
                        continue;
                    }
                    for m in 0..n {
                        // R on the first factor: R(b_k)·b_l; on the second: b_k·R(b_l)
                        let (prod, var) = if first {
                            (consts.basis_product(m, l), m * n + k)
                        } else {
                            (consts.basis_product(k, m), m * n + l)
                        };
                        for (p, coef) in prod {
                            let cur = sys.get(a * n + p, var) + c * coef;
                            sys.set(a * n + p, var, cur);
                        }
                    }
                }
            }
        }
        kernel(&sys).len()
    };
    UniquenessReport {
        counit_left: counit(true),
        counit_right: counit(false),
        antipode_left: antipode(true),
        antipode_right: antipode(false),
    }
}

/// Everything the integral route computed, stage by stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralRoute {
    pub regularity: Regularity,
    pub left_leg_dim: usize,
    pub right_leg_dim: usize,
    pub left_integrals: Vec<LinearFunctional>,
    pub right_integrals: Vec<LinearFunctional>,
    /// Gram rank of each basis vector of the left integral space.
    pub left_gram_ranks: Vec<usize>,
    pub faithful_left: Option<LinearFunctional>,
    pub faithful_right: Option<LinearFunctional>,
    /// Whether the chosen left integral is also right invariant.
    pub left_integral_right_invariant: Option<bool>,
    pub galois: Option<GaloisReport>,
    pub epsilon: Option<LinearFunctional>,
    pub antipode: Option<AntipodeMap>,
    pub structure: Option<StructureReport>,
    pub antipode_invertible: Option<bool>,
    pub verdict: Verdict,
    /// Implications that must hold whenever their premises do; nonempty means a bug.
    pub inconsistencies: Vec<String>,
}

/// Full integral-route pipeline: fullness, integral existence, faithfulness,
/// Galois bijectivity, construction of `ε` and `S`, identity verification.
/// The verdict names the first hypothesis that failed in that order.
pub fn classify_detailed(cm: &ComultMatrix) -> IntegralRoute {
    let n = cm.dim();
    let alg = cm.algebra();
    let mut route = IntegralRoute {
        regularity: cm.regularity_note(),
        left_leg_dim: cm.leg(Side::Left, LegTarget::Whole).dim(),
        right_leg_dim: cm.leg(Side::Right, LegTarget::Whole).dim(),
        left_integrals: Vec::new(),
        right_integrals: Vec::new(),
        left_gram_ranks: Vec::new(),
        faithful_left: None,
        faithful_right: None,
        left_integral_right_invariant: None,
        galois: None,
        epsilon: None,
        antipode: None,
        structure: None,
        antipode_invertible: None,
        verdict: Verdict::Inconclusive {
            reason: "pipeline did not run".into(),
        },
        inconsistencies: Vec::new(),
    };
    let not_hopf = |failure, witness: String| Verdict::NotHopf { failure, witness };

    if !alg.is_unital() {
        route.verdict = Verdict::Inconclusive {
            reason: "non-unital finite-dimensional input: this pipeline requires a unit \
                     (a finite-dimensional multiplier Hopf algebra is unital)"
                .into(),
        };
        return route;
    }
    if route.left_leg_dim < n {
        route.verdict = not_hopf(
            FailedHypothesis::LeftLegNotFull,
            format!("left leg has dimension {} of {n}", route.left_leg_dim),
        );
        return route;
    }

    route.left_integrals = invariant_space(cm, Side::Left);
    route.right_integrals = invariant_space(cm, Side::Right);
    route.left_gram_ranks = route
        .left_integrals
        .iter()
        .map(|f| rank(&gram_matrix(alg, f)))
        .collect();
    if route.left_integrals.is_empty() {
        route.verdict = not_hopf(
            FailedHypothesis::NoLeftIntegral,
            "left invariance system has trivial kernel".into(),
        );
        return route;
    }
    if let SearchOutcome::Found(v) = find_faithful(alg, &route.right_integrals) {
        route.faithful_right = Some(LinearFunctional(v));
    }
    let phi = match find_faithful(alg, &route.left_integrals) {
        SearchOutcome::Found(v) => LinearFunctional(v),
        SearchOutcome::NoneExists => {
            let ranks: Vec<String> = route.left_gram_ranks.iter().map(usize::to_string).collect();
            route.verdict = not_hopf(
                FailedHypothesis::NoFaithfulLeftIntegral,
                format!(
                    "left integral space has dimension {}; Gram rank {} of {n}",
                    route.left_integrals.len(),
                    ranks.join(", ")
                ),
            );
            return route;
        }
        SearchOutcome::Exhausted { tried } => {
            route.verdict = Verdict::Inconclusive {
                reason: format!(
                    "no faithful left integral among {tried} bounded combinations of a {}-dimensional integral space",
                    route.left_integrals.len()
                ),
            };
            return route;
        }
    };
    route.left_integral_right_invariant = Some(is_invariant(cm, Side::Right, &phi));
    route.faithful_left = Some(phi.clone());

    let galois = galois_bijectivity_report(cm, Some(&phi), route.faithful_right.as_ref());
    for imp in galois.implications.iter().filter(|i| i.violated()) {
        route
            .inconsistencies
            .push(format!("{} holds but {} fails", imp.premise, imp.conclusion));
    }
    let broken = [GaloisKind::T1, GaloisKind::T2]
        .into_iter()
        .find(|&k| !galois.bijective(k));
    route.galois = Some(galois);
    if let Some(kind) = broken {
        route
            .inconsistencies
            .push(format!("{kind} not bijective despite a faithful left integral and full left leg"));
        let rank = route.galois.as_ref().map_or(0, |g| g.rank(kind));
        route.verdict = not_hopf(
            FailedHypothesis::GaloisNotBijective(kind),
            format!("rank {rank} of {}", n * n),
        );
        return route;
    }

    let epsilon = match construct_counit(cm, &phi) {
        Ok(e) => e,
        Err(err) => {
            route.inconsistencies.push(format!("counit construction failed: {err}"));
            route.verdict = not_hopf(FailedHypothesis::CounitNotDetermined, err.to_string());
            return route;
        }
    };
    route.epsilon = Some(epsilon.clone());
    let antipode = match construct_antipode(cm, &phi) {
        Ok(s) => s,
        Err(err) => {
            route.inconsistencies.push(format!("antipode construction failed: {err}"));
            route.verdict = not_hopf(FailedHypothesis::AntipodeNotDetermined, err.to_string());
            return route;
        }
    };
    route.antipode = Some(antipode.clone());
    route.antipode_invertible = Some(antipode.is_invertible());
    if !antipode.is_invertible() {
        route.inconsistencies.push("constructed antipode is not invertible".into());
    }

    let structure = verify_structure(cm, &epsilon, &antipode);
    let failure = structure.first_failure().cloned();
    route.structure = Some(structure);
    if let Some(check) = failure {
        route.inconsistencies.push(format!(
            "constructed data violates {}",
            check.id.formula()
        ));
        route.verdict = not_hopf(
            FailedHypothesis::IdentityFailed(check.id),
            format!("max residual {} at basis {:?}", check.max_residual, check.witness.unwrap_or_default()),
        );
        return route;
    }
    route.verdict = Verdict::Hopf { epsilon, antipode };
    route
}

pub fn classify(cm: &ComultMatrix) -> Verdict {
    classify_detailed(cm).verdict
}

/// `true` iff `x` is a scalar multiple of the unit.
pub fn is_scalar_multiple_of_unit(cm: &ComultMatrix, x: &[Scalar]) -> bool {
    match cm.algebra().unit() {
        Some(u) => {
            let Some(p) = u.iter().position(|c| !c.is_zero()) else {
                return is_zero_vector(x);
            };
            let c = &x[p] / &u[p];
            crate::exactlin::scale(u, &c) == x
        }
        None => is_zero_vector(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        build_group_algebra, build_monoid_bialgebra, build_sweedler_h4, CayleyTable, Expected,
    };
    use crate::exactlin::{int, unit_vector};

    fn dual(n: usize, i: usize) -> LinearFunctional {
        LinearFunctional(unit_vector(n, i))
    }

    #[test]
    fn c2_preimage_example() {
        let e = build_group_algebra("c2", &CayleyTable::cyclic(2));
        let (ee, s) = (unit_vector(2, 0), unit_vector(2, 1));
        let p = t1_preimage(&e.comult, &dual(2, 0), &s, &s, &ee).unwrap();
        assert_eq!(p.x, s);
        assert_eq!(p.y, tensor::pure(2, &s, &s));
    }

    #[test]
    fn preimage_rejects_non_invariant_functional() {
        let e = build_sweedler_h4();
        // dual of x is right, not left, invariant
        let bad = dual(4, 2);
        let any_fail = (0..4).any(|a| {
            (0..4).any(|b| {
                (0..4).any(|c| {
                    t1_preimage(&e.comult, &bad, &unit_vector(4, a), &unit_vector(4, b), &unit_vector(4, c))
                        .is_err()
                })
            })
        });
        assert!(any_fail);
    }

    #[test]
    fn c2_counit_and_antipode() {
        let e = build_group_algebra("c2", &CayleyTable::cyclic(2));
        let eps = construct_counit(&e.comult, &dual(2, 0)).unwrap();
        assert_eq!(eps.coords(), &[int(1), int(1)]);
        let s = construct_antipode(&e.comult, &dual(2, 0)).unwrap();
        assert_eq!(s.0, Matrix::identity(2));
    }

    #[test]
    fn h4_construction_matches_known_values() {
        let e = build_sweedler_h4();
        let phi = dual(4, 3);
        let eps = construct_counit(&e.comult, &phi).unwrap();
        let s = construct_antipode(&e.comult, &phi).unwrap();
        let Expected::Hopf { epsilon, antipode } = &e.expected else { panic!() };
        assert_eq!(&eps.0, epsilon);
        assert_eq!(&s.0, antipode);
        let report = verify_structure(&e.comult, &eps, &s);
        assert!(report.all_hold(), "{report:?}");
        assert_ne!(s.power(2), Matrix::identity(4));
        assert_eq!(s.power(4), Matrix::identity(4));
    }

    #[test]
    fn planted_wrong_antipode_detected() {
        let e = build_sweedler_h4();
        let Expected::Hopf { epsilon, antipode } = &e.expected else { panic!() };
        let mut bad = antipode.clone();
        // S(x) = x
        bad.set(2, 2, int(1));
        bad.set(3, 2, int(0));
        let report = verify_structure(&e.comult, &LinearFunctional(epsilon.clone()), &AntipodeMap(bad));
        assert!(!report.all_hold());
        assert!(!report.get(IdentityId::AntipodeRightConvolution).holds());
        assert!(!report.get(IdentityId::AntipodeLeftConvolution).holds());
    }

    #[test]
    fn monoid_counit_construction_fails_loudly() {
        let e = build_monoid_bialgebra();
        let err = construct_counit(&e.comult, &dual(2, 0)).unwrap_err();
        assert!(matches!(
            err,
            ConstructionError::UnderdeterminedSystem { .. } | ConstructionError::InconsistentSystem(_)
        ));
        assert!(construct_antipode(&e.comult, &dual(2, 0)).is_err());
    }

    #[test]
    fn monoid_is_not_hopf() {
        let e = build_monoid_bialgebra();
        let route = classify_detailed(&e.comult);
        match &route.verdict {
            Verdict::NotHopf { failure, .. } => {
                assert_eq!(*failure, FailedHypothesis::NoFaithfulLeftIntegral);
                assert_eq!(failure.reason(), "no faithful left integral");
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(route.left_gram_ranks, vec![1]);
        assert!(route.inconsistencies.is_empty());
    }

    #[test]
    fn galois_ranks() {
        let h4 = build_sweedler_h4();
        let g = galois_bijectivity_report(&h4.comult, Some(&dual(4, 3)), Some(&dual(4, 2)));
        assert!(g.all_bijective());
        assert!(g.implications.iter().all(|i| i.applies && i.holds));

        let m = build_monoid_bialgebra();
        let g = galois_bijectivity_report(&m.comult, Some(&dual(2, 0)), None);
        assert_eq!(g.rank(GaloisKind::T1), 3);
        assert_eq!(g.rank(GaloisKind::T2), 3);
        assert!(g.implications.iter().all(|i| !i.applies));
    }

    #[test]
    fn uniqueness_systems_trivial_for_hopf() {
        let e = build_sweedler_h4();
        let u = uniqueness_report(&e.comult);
        assert_eq!(u, UniquenessReport { counit_left: 0, counit_right: 0, antipode_left: 0, antipode_right: 0 });
    }

    #[test]
    fn unit_multiple() {
        let e = build_sweedler_h4();
        assert!(is_scalar_multiple_of_unit(&e.comult, &[int(3), int(0), int(0), int(0)]));
        assert!(!is_scalar_multiple_of_unit(&e.comult, &[int(3), int(1), int(0), int(0)]));
    }
}
