//! The cointegral route: a faithful left cointegral `h` (an element with
//! `Δ(a)(1⊗h) = a⊗h` for all `a`) yields the counit through `ah = ε(a)h` and
//! the antipode through `(1⊗a)Δ(h) = (S(a)⊗1)Δ(h)`.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Side;
use crate::comult::{ComultMatrix, GaloisKind, LegTarget};
use crate::exactlin::{kernel, rank, solve_many, sub, Matrix, Scalar, SolveError, Vector};
use crate::integrals::{
    bounded_search, LinearFunctional, SearchOutcome, DEFAULT_COEFFICIENT_BOUND,
    DEFAULT_SEARCH_LIMIT,
};
use crate::ls_engine::{
    verify_structure, AntipodeMap, FailedHypothesis, IdentityId, Implication, StructureReport,
    Verdict,
};
use crate::tensor::{self, Factor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cointegral {
    pub element: Vector,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CointegralError {
    #[error("element is zero or not a left cointegral")]
    NotCointegral,
    #[error("right leg of Δ is not all of A (dimension {leg_dim} of {dim})")]
    RightLegNotFull { leg_dim: usize, dim: usize },
    #[error("b{basis}·h is not a multiple of h")]
    NotProportional { basis: usize },
    #[error("left leg of Δ(h) is deficient: (b⊗1)Δ(h) spans {rank} of {dim} dimensions")]
    LegDeficient { rank: usize, dim: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// Column `m` is `Δ(a)(1⊗b_m) − a⊗b_m` (left) or `(b_m⊗1)Δ(a) − b_m⊗a` (right),
/// stacked over all basis `a`: the cointegral condition as a linear system in `h`.
pub fn cointegral_system(cm: &ComultMatrix, side: Side) -> Matrix {
    let n = cm.dim();
    let alg = cm.algebra();
    let consts = alg.constants();
    let mut m = Matrix::zeros(n * n * n, n);
    for a in 0..n {
        let ba = alg.basis(a);
        for h in 0..n {
            let bh = alg.basis(h);
            let col = match side {
                Side::Left => sub(
                    &tensor::right_mul(consts, cm.delta_basis(a), &bh, Factor::Second),
                    &tensor::pure(n, &ba, &bh),
                ),
                Side::Right => sub(
                    &tensor::left_mul(consts, &bh, Factor::First, cm.delta_basis(a)),
                    &tensor::pure(n, &bh, &ba),
                ),
            };
            for (kl, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(a * n * n + kl, h, v);
                }
            }
        }
    }
    m
}

/// Basis of the space of elements satisfying the cointegral condition on `side`.
pub fn cointegral_space(cm: &ComultMatrix, side: Side) -> Vec<Cointegral> {
    kernel(&cointegral_system(cm, side))
        .into_iter()
        .map(|element| Cointegral { element, side })
        .collect()
}

pub fn is_cointegral(cm: &ComultMatrix, side: Side, h: &[Scalar]) -> bool {
    !crate::exactlin::is_zero_vector(h)
        && cointegral_system(cm, side)
            .mul_vec(h)
            .is_ok_and(|r| crate::exactlin::is_zero_vector(&r))
}

/// Dimensions of both legs of `Δ(h)`. Faithful means both are all of `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CointegralFaithfulness {
    pub dim: usize,
    pub left_leg_dim: usize,
    pub right_leg_dim: usize,
}

impl CointegralFaithfulness {
    pub fn faithful(&self) -> bool {
        self.left_leg_dim == self.dim && self.right_leg_dim == self.dim
    }
}

pub fn cointegral_faithful(cm: &ComultMatrix, h: &[Scalar]) -> CointegralFaithfulness {
    CointegralFaithfulness {
        dim: cm.dim(),
        left_leg_dim: cm.leg(Side::Left, LegTarget::Element(h)).dim(),
        right_leg_dim: cm.leg(Side::Right, LegTarget::Element(h)).dim(),
    }
}

/// `ε` from `ah = ε(a)h`, then checked: multiplicative, both counit identities,
/// and `Δ(a)(h⊗1) = h⊗a`.
pub fn counit_from_cointegral(
    cm: &ComultMatrix,
    h: &[Scalar],
) -> Result<LinearFunctional, CointegralError> {
    let n = cm.dim();
    let alg = cm.algebra();
    if !is_cointegral(cm, Side::Left, h) {
        return Err(CointegralError::NotCointegral);
    }
    let leg_dim = cm.leg(Side::Right, LegTarget::Whole).dim();
    if leg_dim < n {
        return Err(CointegralError::RightLegNotFull { leg_dim, dim: n });
    }
    let pivot = h.iter().position(|c| !c.is_zero()).expect("cointegral is nonzero");
    let mut eps = Vec::with_capacity(n);
    for a in 0..n {
        let ah = alg.multiply(&alg.basis(a), h);
        let e = &ah[pivot] / &h[pivot];
        if crate::exactlin::scale(h, &e) != ah {
            return Err(CointegralError::NotProportional { basis: a });
        }
        eps.push(e);
    }
    let eps = LinearFunctional(eps);

    for a in 0..n {
        for b in 0..n {
            let ab = alg.multiply(&alg.basis(a), &alg.basis(b));
            if eps.apply(&ab) != &eps.0[a] * &eps.0[b] {
                return Err(CointegralError::VerificationFailed(format!(
                    "ε not multiplicative at (b{a}, b{b})"
                )));
            }
        }
        let d = cm.delta_basis(a);
        if tensor::slice_second(n, d, eps.coords()) != alg.basis(a) {
            return Err(CointegralError::VerificationFailed(format!("(ι⊗ε)Δ(b{a}) != b{a}")));
        }
        if tensor::slice_first(n, eps.coords(), d) != alg.basis(a) {
            return Err(CointegralError::VerificationFailed(format!("(ε⊗ι)Δ(b{a}) != b{a}")));
        }
        let lhs = tensor::right_mul(alg.constants(), d, h, Factor::First);
        if lhs != tensor::pure(n, h, &alg.basis(a)) {
            return Err(CointegralError::VerificationFailed(format!("Δ(b{a})(h⊗1) != h⊗b{a}")));
        }
    }
    Ok(eps)
}

/// `S` from `(1⊗a)Δ(h) = (S(a)⊗1)Δ(h)`, solved for every basis `a`; the
/// result must satisfy both convolution identities.
pub fn antipode_from_cointegral(
    cm: &ComultMatrix,
    h: &[Scalar],
) -> Result<AntipodeMap, CointegralError> {
    let n = cm.dim();
    let alg = cm.algebra();
    let consts = alg.constants();
    let eps = counit_from_cointegral(cm, h)?;
    let dh = cm.apply(h);
    let lhs_cols: Vec<Vector> = (0..n)
        .map(|m| tensor::left_mul(consts, &alg.basis(m), Factor::First, &dh))
        .collect();
    let coeffs = Matrix::from_columns(n * n, &lhs_cols).expect("columns of length dim²");
    let r = rank(&coeffs);
    if r < n {
        return Err(CointegralError::LegDeficient { rank: r, dim: n });
    }
    let rhs_cols: Vec<Vector> = (0..n)
        .map(|a| tensor::left_mul(consts, &alg.basis(a), Factor::Second, &dh))
        .collect();
    let rhs = Matrix::from_columns(n * n, &rhs_cols).expect("columns of length dim²");
    let s = match solve_many(&coeffs, &rhs) {
        Ok(s) => AntipodeMap(s),
        Err(SolveError::Inconsistent(w)) => {
            return Err(CointegralError::VerificationFailed(format!(
                "(1⊗b{a})Δ(h) is not of the form (s⊗1)Δ(h)",
                a = w.rhs_column
            )))
        }
        Err(SolveError::Dimension(_)) => unreachable!("shapes match by construction"),
    };
    let report = verify_structure(cm, &eps, &s);
    for id in [
        IdentityId::AntipodeRightConvolution,
        IdentityId::AntipodeLeftConvolution,
    ] {
        if !report.get(id).holds() {
            return Err(CointegralError::VerificationFailed(format!(
                "{} fails for the solved S",
                id.formula()
            )));
        }
    }
    Ok(s)
}

/// Everything the cointegral route computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CointegralRoute {
    pub left_cointegrals: Vec<Cointegral>,
    pub right_cointegrals: Vec<Cointegral>,
    /// Leg dimensions of `Δ(h)` for each basis left cointegral.
    pub left_faithfulness: Vec<CointegralFaithfulness>,
    pub faithful_left: Option<Vector>,
    pub faithful_right: Option<Vector>,
    pub t1_rank: Option<usize>,
    pub t2_rank: Option<usize>,
    pub implications: Vec<Implication>,
    pub epsilon: Option<LinearFunctional>,
    pub antipode: Option<AntipodeMap>,
    /// `S` has zero kernel (expected whenever the right leg of `Δ(h)` is full).
    pub antipode_injective: Option<bool>,
    pub structure: Option<StructureReport>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
    pub inconsistencies: Vec<String>,
}

fn find_faithful_cointegral(cm: &ComultMatrix, space: &[Cointegral]) -> SearchOutcome {
    let basis: Vec<Vector> = space.iter().map(|c| c.element.clone()).collect();
    bounded_search(&basis, DEFAULT_COEFFICIENT_BOUND, DEFAULT_SEARCH_LIMIT, |v| {
        cointegral_faithful(cm, v).faithful()
    })
}

/// Cointegral pipeline: left cointegral, faithfulness, `T2` injective and `T1`
/// surjective, `ε` from `ah = ε(a)h`, `S` from the `Δ(h)` relation, identity checks.
pub fn classify_discrete_detailed(cm: &ComultMatrix) -> CointegralRoute {
    let n = cm.dim();
    let mut route = CointegralRoute {
        left_cointegrals: Vec::new(),
        right_cointegrals: Vec::new(),
        left_faithfulness: Vec::new(),
        faithful_left: None,
        faithful_right: None,
        t1_rank: None,
        t2_rank: None,
        implications: Vec::new(),
        epsilon: None,
        antipode: None,
        antipode_injective: None,
        structure: None,
        notes: Vec::new(),
        verdict: Verdict::Inconclusive {
            reason: "pipeline did not run".into(),
        },
        inconsistencies: Vec::new(),
    };
    let not_hopf = |failure, witness: String| Verdict::NotHopf { failure, witness };

    if !cm.algebra().is_unital() {
        route.verdict = Verdict::Inconclusive {
            reason: "non-unital finite-dimensional input: this pipeline requires a unit".into(),
        };
        return route;
    }

    route.left_cointegrals = cointegral_space(cm, Side::Left);
    route.right_cointegrals = cointegral_space(cm, Side::Right);
    route.left_faithfulness = route
        .left_cointegrals
        .iter()
        .map(|c| cointegral_faithful(cm, &c.element))
        .collect();
    if route.left_cointegrals.is_empty() {
        route.verdict = not_hopf(
            FailedHypothesis::NoLeftCointegral,
            "left cointegral system has trivial kernel".into(),
        );
        return route;
    }
    if let SearchOutcome::Found(v) = find_faithful_cointegral(cm, &route.right_cointegrals) {
        route.faithful_right = Some(v);
    }
    let h = match find_faithful_cointegral(cm, &route.left_cointegrals) {
        SearchOutcome::Found(v) => v,
        SearchOutcome::NoneExists => {
            let legs: Vec<String> = route
                .left_faithfulness
                .iter()
                .map(|f| format!("legs of Δ(h) have dimensions {} and {} of {n}", f.left_leg_dim, f.right_leg_dim))
                .collect();
            route.verdict = not_hopf(FailedHypothesis::CointegralNotFaithful, legs.join("; "));
            return route;
        }
        SearchOutcome::Exhausted { tried } => {
            route.verdict = Verdict::Inconclusive {
                reason: format!(
                    "no faithful left cointegral among {tried} bounded combinations of a {}-dimensional cointegral space",
                    route.left_cointegrals.len()
                ),
            };
            return route;
        }
    };
    route.faithful_left = Some(h.clone());

    let size = n * n;
    let t1 = cm.galois_rank(GaloisKind::T1);
    let t2 = cm.galois_rank(GaloisKind::T2);
    route.t1_rank = Some(t1);
    route.t2_rank = Some(t2);
    route.implications.push(Implication {
        premise: "left cointegral with full left leg of Δ(h)".into(),
        conclusion: "T2 injective".into(),
        applies: true,
        holds: t2 == size,
    });
    route.implications.push(Implication {
        premise: "left leg of Δ(h) is all of A".into(),
        conclusion: "T1 surjective".into(),
        applies: true,
        holds: t1 == size,
    });
    if route.faithful_right.is_some() {
        let all = GaloisKind::ALL.iter().all(|&k| cm.galois_rank(k) == size);
        route.implications.push(Implication {
            premise: "faithful left and right cointegrals".into(),
            conclusion: "all four Galois maps bijective".into(),
            applies: true,
            holds: all,
        });
        route.notes.push(
            "erratum: bijectivity of all four Galois maps is usually stated for faithful \
             integrals; in this route it is applied with faithful cointegrals"
                .into(),
        );
    }
    for imp in route.implications.iter().filter(|i| i.violated()) {
        route
            .inconsistencies
            .push(format!("{} holds but {} fails", imp.premise, imp.conclusion));
    }
    if t2 != size || t1 != size {
        let kind = if t2 != size { GaloisKind::T2 } else { GaloisKind::T1 };
        route.verdict = not_hopf(
            FailedHypothesis::GaloisNotBijective(kind),
            format!("rank {} of {size}", cm.galois_rank(kind)),
        );
        return route;
    }

    let eps = match counit_from_cointegral(cm, &h) {
        Ok(e) => e,
        Err(err) => {
            route.inconsistencies.push(format!("counit from cointegral failed: {err}"));
            let failure = match err {
                CointegralError::RightLegNotFull { .. } => FailedHypothesis::RightLegNotFull,
                _ => FailedHypothesis::CounitNotDetermined,
            };
            route.verdict = not_hopf(failure, err.to_string());
            return route;
        }
    };
    route.epsilon = Some(eps.clone());
    let s = match antipode_from_cointegral(cm, &h) {
        Ok(s) => s,
        Err(err) => {
            route.inconsistencies.push(format!("antipode from cointegral failed: {err}"));
            route.verdict = not_hopf(FailedHypothesis::AntipodeNotDetermined, err.to_string());
            return route;
        }
    };
    let injective = s.is_invertible();
    route.antipode_injective = Some(injective);
    if cointegral_faithful(cm, &h).right_leg_dim == n && !injective {
        route
            .inconsistencies
            .push("right leg of Δ(h) is full but S has a kernel".into());
    }
    route.antipode = Some(s.clone());

    let structure = verify_structure(cm, &eps, &s);
    let failure = structure.first_failure().cloned();
    route.structure = Some(structure);
    if let Some(check) = failure {
        route
            .inconsistencies
            .push(format!("cointegral data violates {}", check.id.formula()));
        route.verdict = not_hopf(
            FailedHypothesis::IdentityFailed(check.id),
            format!("max residual {}", check.max_residual),
        );
        return route;
    }
    route.verdict = Verdict::Hopf {
        epsilon: eps,
        antipode: s,
    };
    route
}

pub fn classify_discrete(cm: &ComultMatrix) -> Verdict {
    classify_discrete_detailed(cm).verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        build_function_algebra, build_group_algebra, build_monoid_bialgebra, build_sweedler_h4,
        CayleyTable, Expected,
    };
    use crate::exactlin::{int, Matrix};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn function_algebra_c2_cointegral() {
        let e = build_function_algebra("f", &CayleyTable::cyclic(2));
        let space = cointegral_space(&e.comult, Side::Left);
        assert_eq!(space.len(), 1);
        assert_eq!(space[0].element, v(&[1, 0]));
        assert!(cointegral_faithful(&e.comult, &space[0].element).faithful());
        let eps = counit_from_cointegral(&e.comult, &space[0].element).unwrap();
        assert_eq!(eps.0, v(&[1, 0]));
        let s = antipode_from_cointegral(&e.comult, &space[0].element).unwrap();
        assert_eq!(s.0, Matrix::identity(2));
    }

    #[test]
    fn h4_cointegrals() {
        let e = build_sweedler_h4();
        let left = cointegral_space(&e.comult, Side::Left);
        let right = cointegral_space(&e.comult, Side::Right);
        assert_eq!(left.len(), 1);
        assert_eq!(right.len(), 1);
        // kernel basis is normalised on the last free coordinate
        assert_eq!(left[0].element, v(&[0, 0, 1, 1]));
        assert_eq!(right[0].element, v(&[0, 0, -1, 1]));
        let h = &left[0].element;
        assert!(cointegral_faithful(&e.comult, h).faithful());
        let eps = counit_from_cointegral(&e.comult, h).unwrap();
        assert_eq!(eps.0, v(&[1, 1, 0, 0]));
        let s = antipode_from_cointegral(&e.comult, h).unwrap();
        let Expected::Hopf { antipode, .. } = &e.expected else { panic!() };
        assert_eq!(&s.0, antipode);
    }

    #[test]
    fn group_algebra_cointegral_is_sum_of_group() {
        let e = build_group_algebra("c2", &CayleyTable::cyclic(2));
        let h = &cointegral_space(&e.comult, Side::Left)[0].element;
        assert_eq!(h, &v(&[1, 1]));
        let eps = counit_from_cointegral(&e.comult, h).unwrap();
        assert_eq!(eps.0, v(&[1, 1]));

        let c3 = build_group_algebra("c3", &CayleyTable::cyclic(3));
        let h = v(&[1, 1, 1]);
        let s = antipode_from_cointegral(&c3.comult, &h).unwrap();
        // S(c) = c², S(c²) = c
        assert_eq!(s.0.column(1), v(&[0, 0, 1]));
        assert_eq!(s.0.column(2), v(&[0, 1, 0]));
    }

    #[test]
    fn monoid_cointegral_not_faithful() {
        let e = build_monoid_bialgebra();
        let space = cointegral_space(&e.comult, Side::Left);
        assert_eq!(space.len(), 1);
        assert_eq!(space[0].element, v(&[0, 1]));
        let f = cointegral_faithful(&e.comult, &space[0].element);
        assert_eq!((f.left_leg_dim, f.right_leg_dim), (1, 1));
        assert!(!f.faithful());
        match classify_discrete(&e.comult) {
            Verdict::NotHopf { failure, .. } => {
                assert_eq!(failure, FailedHypothesis::CointegralNotFaithful)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_cointegral_rejected() {
        let e = build_sweedler_h4();
        assert_eq!(
            counit_from_cointegral(&e.comult, &v(&[1, 0, 0, 0])).unwrap_err(),
            CointegralError::NotCointegral
        );
    }
}
