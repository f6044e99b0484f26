//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use mha_core::algebra::{AlgebraError, FinDimAlgebra, Side, StructureConstants};
use mha_core::catalog::{build_monoid_bialgebra, build_sweedler_h4, by_name, standard_catalog, CatalogEntry, Expected};
use mha_core::cointegrals::{classify_discrete, cointegral_faithful, cointegral_space, is_cointegral};
use mha_core::comult::{ComultError, ComultMatrix, GaloisKind};
use mha_core::exactlin::{int, ratio, unit_vector, Matrix};
use mha_core::integrals::{gram_matrix, invariant_space, is_invariant};
use mha_core::kg::{run_suite, InfiniteDihedral, Integers, KgReport};
use mha_core::ls_engine::{
    classify, classify_detailed, construct_antipode, construct_counit, t1_preimage, verify_structure,
    AntipodeMap, FailedHypothesis, Verdict,
};
use mha_core::report::{render, run_on, Command, Format, Route};
use mha_core::specfile::{export, load};

use common::{oracle_antipode, oracle_counit, oracle_t1, outer};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hopf_entries() -> Vec<CatalogEntry> {
    standard_catalog()
        .into_iter()
        .filter(|e| matches!(e.expected, Expected::Hopf { .. }))
        .collect()
}

fn hopf_parts(v: Verdict, name: &str) -> Result<(Vec<mha_core::exactlin::Scalar>, Matrix), String> {
    match v {
        Verdict::Hopf { epsilon, antipode } => Ok((epsilon.0, antipode.0)),
        other => Err(format!("{name}: expected hopf, got {}", other.key())),
    }
}

fn classification() -> Outcome {
    let start = Instant::now();
    let expect_hopf = ["group-c2", "group-c3", "group-s3", "functions-c2", "functions-s3", "sweedler-h4"];
    for name in expect_hopf {
        let e = by_name(name).ok_or(format!("missing {name}"))?;
        let (e1, s1) = hopf_parts(classify(&e.comult), name)?;
        let (e2, s2) = hopf_parts(classify_discrete(&e.comult), name)?;
        ensure(e1 == e2 && s1 == s2, || format!("{name}: routes disagree"))?;
    }
    let m = build_monoid_bialgebra();
    match classify(&m.comult) {
        Verdict::NotHopf { failure, .. } => ensure(
            failure == FailedHypothesis::NoFaithfulLeftIntegral && failure.reason() == "no faithful left integral",
            || format!("monoid: wrong reason {failure}"),
        )?,
        other => return Err(format!("monoid: got {}", other.key())),
    }
    ensure(classify_discrete(&m.comult).key() == "not_hopf", || "monoid: cointegral route".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("6 hopf + monoid not_hopf, both routes agree, {elapsed:.2?}"))
}

fn ablation() -> Outcome {
    let m = build_monoid_bialgebra();
    let cm = &m.comult;
    let (t1, t2) = (cm.galois_rank(GaloisKind::T1), cm.galois_rank(GaloisKind::T2));
    ensure(t1 == 3 && t2 == 3, || format!("T1 rank {t1}, T2 rank {t2}"))?;
    let space = invariant_space(cm, Side::Left);
    ensure(space.len() == 1, || format!("integral space dim {}", space.len()))?;
    let g = gram_matrix(cm.algebra(), &space[0]).rank();
    ensure(g == 1, || format!("Gram rank {g}"))?;
    let s = vec![int(0), int(1)];
    ensure(is_cointegral(cm, Side::Left, &s), || "h = s is not a left cointegral".into())?;
    let f = cointegral_faithful(cm, &s);
    ensure(!f.faithful(), || "h = s reported faithful".into())?;
    Ok(format!(
        "T1 = T2 = 3 of 4, Gram rank 1, legs of Δ(s) have dims {} and {}",
        f.left_leg_dim, f.right_leg_dim
    ))
}

fn preimages() -> Outcome {
    let mut total = 0;
    for e in hopf_entries() {
        let cm = &e.comult;
        let n = cm.dim();
        let phi = classify_detailed(cm).faithful_left.ok_or(format!("{}: no faithful φ", e.name))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let uc = unit_vector(n, c);
                    let p = t1_preimage(cm, &phi, &unit_vector(n, a), &unit_vector(n, b), &uc)
                        .map_err(|err| format!("{} ({a},{b},{c}): {err}", e.name))?;
                    ensure(oracle_t1(cm, &p.y) == outer(&p.x, &uc), || format!("{} ({a},{b},{c})", e.name))?;
                    total += 1;
                }
            }
        }
    }
    Ok(format!("{total} basis triples, T1(y) = x⊗c exactly"))
}

fn identity_suite() -> Outcome {
    for e in hopf_entries() {
        let (eps, s) = hopf_parts(classify(&e.comult), &e.name)?;
        let r = verify_structure(&e.comult, &mha_core::integrals::LinearFunctional(eps), &AntipodeMap(s));
        for c in &r.checks {
            ensure(c.applicable && c.max_residual == int(0), || format!("{}: {} residual {}", e.name, c.id.formula(), c.max_residual))?;
        }
    }
    let h4 = build_sweedler_h4();
    let (_, s) = hopf_parts(classify(&h4.comult), "sweedler-h4")?;
    let s = AntipodeMap(s);
    let id = Matrix::identity(4);
    ensure(s.power(2) != id, || "H4: S² = id".into())?;
    ensure(s.power(4) == id, || "H4: S⁴ != id".into())?;
    Ok("7 identities with zero residual on 6 entries, H4 S² ≠ id and S⁴ = id".into())
}

fn oracle_equivalence() -> Outcome {
    for e in hopf_entries() {
        let (e1, s1) = hopf_parts(classify(&e.comult), &e.name)?;
        let (e2, s2) = hopf_parts(classify_discrete(&e.comult), &e.name)?;
        let e3 = oracle_counit(&e.comult).ok_or(format!("{}: oracle counit", e.name))?;
        let s3 = oracle_antipode(&e.comult, &e3).ok_or(format!("{}: oracle antipode", e.name))?;
        ensure(e1 == e2 && e2 == e3, || format!("{}: ε differs", e.name))?;
        ensure(s1 == s2 && s2 == s3, || format!("{}: S differs", e.name))?;
    }
    Ok("integral route, cointegral route and convolution-inverse oracle identical".into())
}

fn scaling() -> Outcome {
    for e in hopf_entries() {
        let cm = &e.comult;
        let phi = classify_detailed(cm).faithful_left.ok_or(format!("{}: no φ", e.name))?;
        let eps = construct_counit(cm, &phi).map_err(|err| err.to_string())?;
        let s = construct_antipode(cm, &phi).map_err(|err| err.to_string())?;
        for lambda in [int(2), int(-1), ratio(7, 3)] {
            let p = phi.scaled(&lambda);
            ensure(construct_counit(cm, &p).ok() == Some(eps.clone()), || format!("{}: ε at λ = {lambda}", e.name))?;
            ensure(construct_antipode(cm, &p).ok() == Some(s.clone()), || format!("{}: S at λ = {lambda}", e.name))?;
        }
    }
    Ok("λ ∈ {2, -1, 7/3}: ε and S unchanged".into())
}

fn non_unimodularity() -> Outcome {
    let h4 = build_sweedler_h4();
    let cm = &h4.comult;
    let left = invariant_space(cm, Side::Left);
    ensure(left.len() == 1 && left[0].0 == unit_vector(4, 3), || "left integral is not dual of gx".into())?;
    ensure(!is_invariant(cm, Side::Right, &left[0]), || "left integral is right invariant".into())?;
    let lc = cointegral_space(cm, Side::Left);
    let rc = cointegral_space(cm, Side::Right);
    ensure(lc.len() == 1 && rc.len() == 1, || "cointegral spaces not one-dimensional".into())?;
    let (l, r) = (&lc[0].element, &rc[0].element);
    ensure(*l == vec![int(0), int(0), int(1), int(1)], || "left cointegral is not x + gx".into())?;
    ensure(*r == vec![int(0), int(0), int(-1), int(1)], || "right cointegral is not gx - x".into())?;
    // reported
    let rep = run_on("sweedler-h4", "-", cm, Command::Classify(Route::Both));
    let json = render(&rep, Format::Json);
    ensure(json.contains("\"left_integral_right_invariant\":false"), || "report omits invariance fact".into())?;
    ensure(json.contains("\"as\":\"x + gx\"") && json.contains("\"as\":\"-x + gx\""), || "report omits cointegrals".into())?;
    Ok("left integral gx* not right invariant, cointegrals x + gx vs -x + gx, both in report".into())
}

fn kg_suite() -> Outcome {
    let start = Instant::now();
    let reports: Vec<KgReport> = vec![run_suite(&Integers, 2024, 64), run_suite(&InfiniteDihedral, 2024, 64)];
    let elapsed = start.elapsed();
    for r in &reports {
        ensure(r.pairs >= 50, || format!("{}: only {} pairs", r.group, r.pairs))?;
        ensure(r.max_slice_support > 0, || format!("{}: empty slices", r.group))?;
        for key in ["left_invariance", "right_invariance", "crosscheck_counit", "crosscheck_antipode"] {
            let c = r.get(key).ok_or(format!("missing {key}"))?;
            ensure(c.holds() && c.max_residual == int(0), || format!("{}: {} fails", r.group, c.formula))?;
        }
        ensure(r.all_hold(), || format!("{}: some sliced identity fails", r.group))?;
    }
    ensure(elapsed < Duration::from_secs(2), || format!("took {elapsed:?}"))?;
    Ok(format!("Z and D_inf, 64 pairs each (seed 2024), zero residuals, {elapsed:.2?}"))
}

fn robustness() -> Outcome {
    // e·e = e, e·s = s, s·e = 0, s·s = e
    let consts = StructureConstants::from_entries(2, [(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 1, 0, int(1))]);
    let err = FinDimAlgebra::validate(vec!["e".into(), "s".into()], consts, None)
        .err()
        .ok_or("non-associative table accepted")?;
    ensure(matches!(err, AlgebraError::NonAssociative { .. }) && err.to_string().contains("associativity"), || {
        format!("wrong error: {err}")
    })?;

    let c2 = by_name("group-c2").unwrap();
    // Δ(s) = s⊗s + e⊗e
    let err = ComultMatrix::from_entries(
        c2.algebra().clone(),
        [(0, 0, 0, int(1)), (1, 1, 1, int(1)), (1, 0, 0, int(1))],
        true,
    )
    .err()
    .ok_or("non-coassociative Δ accepted")?;
    ensure(matches!(err, ComultError::NotCoassociative { .. }) && err.to_string().contains("coassociativity"), || {
        format!("wrong error: {err}")
    })?;

    let h4 = build_sweedler_h4();
    let Expected::Hopf { epsilon, antipode } = &h4.expected else { unreachable!() };
    let mut wrong = antipode.clone();
    // S(x) = x instead of -gx
    wrong.set(2, 2, int(1));
    wrong.set(3, 2, int(0));
    let r = verify_structure(&h4.comult, &mha_core::integrals::LinearFunctional(epsilon.clone()), &AntipodeMap(wrong));
    let f = r.first_failure().ok_or("wrong S passes")?;
    ensure(f.id.concept() == "antipode" && f.witness.is_some(), || "wrong S not attributed to antipode".into())?;

    for e in standard_catalog() {
        let text = export(&e.comult, Some(&e.name));
        let back = load(&text).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(back == e.comult, || format!("{}: round trip differs", e.name))?;
    }
    Ok(format!(
        "associativity, coassociativity and antipode ({}) violations caught, 7 round trips exact",
        f.id.formula()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("classification correctness", classification),
        ("hypothesis ablation on the monoid bialgebra", ablation),
        ("T1 preimage identity, exhaustive", preimages),
        ("counit and antipode identity suite", identity_suite),
        ("oracle equivalence of ε and S", oracle_equivalence),
        ("scaling independence", scaling),
        ("non-unimodularity witness on H4", non_unimodularity),
        ("K(G) multiplier backend", kg_suite),
        ("robustness and round trip", robustness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
