//! Certificate reports: run a command on a spec file and render the result.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{describe_vector, Side};
use crate::cointegrals::{cointegral_faithful, cointegral_space, classify_discrete_detailed, CointegralRoute};
use crate::comult::{ComultMatrix, GaloisKind, LegTarget};
use crate::exactlin::{format_scalar, Matrix, Scalar};
use crate::integrals::{gram_matrix, invariant_space, is_faithful, is_invariant, LinearFunctional};
use crate::kg::{run_suite, InfiniteDihedral, IntegerLattice, Integers, KgReport};
use crate::ls_engine::{
    classify_detailed, uniqueness_report, AntipodeMap, GaloisReport, Implication, IntegralRoute,
    StructureReport, Verdict,
};
use crate::specfile::{load, SpecError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Integral,
    Cointegral,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    /// `None` means both sides.
    Integrals(Option<Side>),
    Cointegrals(Option<Side>),
    Construct,
    Classify(Route),
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Integrals(_) => "integrals",
            Command::Cointegrals(_) => "cointegrals",
            Command::Construct => "construct",
            Command::Classify(_) => "classify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgGroup {
    Integers,
    IntegerLattice,
    InfiniteDihedral,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid input: {0}")]
    InvalidInput(#[from] SpecError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INVALID_INPUT
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

/// One pipeline stage: what it computed, which notion it instantiates, and
/// whether that notion's condition held (`None` for purely informational stages).
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub name: String,
    pub concept: String,
    pub ok: Option<bool>,
    pub details: Vec<(String, Value)>,
}

impl Stage {
    fn new(name: &str, concept: &str, ok: Option<bool>) -> Self {
        Stage {
            name: name.to_string(),
            concept: concept.to_string(),
            ok,
            details: Vec::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.push((key.to_string(), value.into()));
        self
    }

    fn to_json(&self) -> Value {
        let details: Map<String, Value> = self.details.iter().cloned().collect();
        json!({
            "name": self.name,
            "concept": self.concept,
            "ok": self.ok,
            "details": details,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub source: String,
    pub input_digest: String,
    pub stages: Vec<Stage>,
    /// Verdict key (`hopf`, `not_hopf`, `inconclusive`) when the command classifies.
    pub verdict: Option<String>,
    pub verdict_detail: Option<Value>,
    pub notes: Vec<String>,
    pub inconsistencies: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.inconsistencies.is_empty() {
            EXIT_OK
        } else {
            EXIT_INCONSISTENT
        }
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "source": self.source,
            "input_sha256": self.input_digest,
            "stages": self.stages.iter().map(Stage::to_json).collect::<Vec<_>>(),
            "verdict": self.verdict,
            "verdict_detail": self.verdict_detail,
            "notes": self.notes,
            "inconsistencies": self.inconsistencies,
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn q(s: &Scalar) -> Value {
    Value::String(format_scalar(s))
}

fn qs(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn rows(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| qs(r)).collect())
}

fn dual_labels(labels: &[String]) -> Vec<String> {
    labels.iter().map(|l| format!("{l}*")).collect()
}

fn functional_json(labels: &[String], f: &LinearFunctional) -> Value {
    json!({ "coords": qs(f.coords()), "as": describe_vector(&dual_labels(labels), f.coords()) })
}

fn element_json(labels: &[String], v: &[Scalar]) -> Value {
    json!({ "coords": qs(v), "as": describe_vector(labels, v) })
}

fn antipode_json(labels: &[String], s: &AntipodeMap) -> Value {
    let images: Vec<String> = (0..labels.len())
        .map(|i| format!("S({}) = {}", labels[i], describe_vector(labels, &s.0.column(i))))
        .collect();
    json!({ "matrix_rows": rows(&s.0), "images": images })
}

fn implications_json(imps: &[Implication]) -> Value {
    Value::Array(
        imps.iter()
            .map(|i| {
                json!({
                    "premise": i.premise,
                    "conclusion": i.conclusion,
                    "premise_holds": i.applies,
                    "conclusion_holds": i.holds,
                })
            })
            .collect(),
    )
}

fn verdict_json(labels: &[String], v: &Verdict) -> Value {
    match v {
        Verdict::Hopf { epsilon, antipode } => json!({
            "verdict": "hopf",
            "epsilon": functional_json(labels, epsilon),
            "antipode": antipode_json(labels, antipode),
        }),
        Verdict::NotHopf { failure, witness } => json!({
            "verdict": "not_hopf",
            "failure": failure.key(),
            "reason": failure.reason(),
            "violates": failure.definition(),
            "witness": witness,
        }),
        Verdict::Inconclusive { reason } => json!({ "verdict": "inconclusive", "reason": reason }),
    }
}

fn algebra_stages(cm: &ComultMatrix) -> Vec<Stage> {
    let alg = cm.algebra();
    let labels = alg.labels();
    let unit = alg.unit().map(|u| element_json(labels, u)).unwrap_or(Value::Null);
    let left = cm.leg(Side::Left, LegTarget::Whole).dim();
    let right = cm.leg(Side::Right, LegTarget::Whole).dim();
    vec![
        Stage::new("algebra", "associative algebra with non-degenerate product", Some(true))
            .with("dim", alg.dim())
            .with("basis", labels.to_vec())
            .with("unital", alg.is_unital())
            .with("unit", unit),
        Stage::new("comultiplication", "coassociative algebra map A → M(A⊗A)", Some(true))
            .with("coassociative", true)
            .with("multiplicative", true)
            .with("regularity", cm.regularity_note().to_string()),
        Stage::new("fullness", "full comultiplication (legs of Δ)", Some(left == alg.dim() && right == alg.dim()))
            .with("left_leg_dim", left)
            .with("right_leg_dim", right),
    ]
}

fn galois_stage(cm: &ComultMatrix) -> Stage {
    let size = cm.dim() * cm.dim();
    let ranks: Map<String, Value> = GaloisKind::ALL
        .iter()
        .map(|&k| (k.name().to_string(), Value::from(cm.galois_rank(k))))
        .collect();
    let all = GaloisKind::ALL.iter().all(|&k| cm.galois_rank(k) == size);
    Stage::new("galois_maps", "Galois maps T1, T2, T1', T2'", Some(all))
        .with("size", size)
        .with("ranks", Value::Object(ranks))
}

fn galois_report_stage(g: &GaloisReport) -> Stage {
    let ranks: Map<String, Value> = g
        .ranks
        .iter()
        .map(|(k, r)| (k.name().to_string(), Value::from(*r)))
        .collect();
    Stage::new("galois_maps", "multiplier Hopf algebra (bijective Galois maps)", Some(g.all_bijective()))
        .with("size", g.size)
        .with("ranks", Value::Object(ranks))
        .with("implications", implications_json(&g.implications))
}

fn integral_side_stage(cm: &ComultMatrix, side: Side) -> Stage {
    let alg = cm.algebra();
    let labels = alg.labels();
    let space = invariant_space(cm, side);
    let basis: Vec<Value> = space.iter().map(|f| functional_json(labels, f)).collect();
    let gram: Vec<usize> = space.iter().map(|f| gram_matrix(alg, f).rank()).collect();
    let faithful: Vec<bool> = space.iter().map(|f| is_faithful(alg, f)).collect();
    let other = match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    let both: Vec<bool> = space.iter().map(|f| is_invariant(cm, other, f)).collect();
    Stage::new(
        &format!("{side}_integrals"),
        &format!("{side} integral ({side} invariant functional)"),
        Some(!space.is_empty()),
    )
    .with("space_dim", space.len())
    .with("basis", basis)
    .with("gram_ranks", gram)
    .with("faithful", faithful)
    .with(&format!("also_{other}_invariant"), both)
}

fn cointegral_side_stage(cm: &ComultMatrix, side: Side) -> Stage {
    let labels = cm.algebra().labels();
    let space = cointegral_space(cm, side);
    let basis: Vec<Value> = space
        .iter()
        .map(|c| {
            let f = cointegral_faithful(cm, &c.element);
            let mut v = element_json(labels, &c.element);
            v["left_leg_dim"] = f.left_leg_dim.into();
            v["right_leg_dim"] = f.right_leg_dim.into();
            v["faithful"] = f.faithful().into();
            v
        })
        .collect();
    let formula = match side {
        Side::Left => "Δ(a)(1⊗h) = a⊗h",
        Side::Right => "(h⊗1)Δ(a) = h⊗a",
    };
    Stage::new(&format!("{side}_cointegrals"), &format!("{side} cointegral"), Some(!space.is_empty()))
        .with("condition", formula)
        .with("space_dim", space.len())
        .with("basis", basis)
}

fn structure_stage(name: &str, s: &StructureReport) -> Stage {
    let checks: Vec<Value> = s
        .checks
        .iter()
        .map(|c| {
            json!({
                "identity": c.id.key(),
                "formula": c.id.formula(),
                "concept": c.id.concept(),
                "applicable": c.applicable,
                "max_residual": q(&c.max_residual),
                "witness": c.witness,
            })
        })
        .collect();
    Stage::new(name, "counit and antipode identities", Some(s.all_hold())).with("checks", checks)
}

fn antipode_order(s: &AntipodeMap) -> Option<u32> {
    let id = Matrix::identity(s.0.rows());
    (1..=16).find(|&k| s.power(k) == id)
}

fn integral_route_stages(cm: &ComultMatrix, r: &IntegralRoute) -> Vec<Stage> {
    let labels = cm.algebra().labels();
    let mut out = Vec::new();
    let mut integrals = Stage::new(
        "integral_route.integrals",
        "left integral (left invariant functional)",
        Some(!r.left_integrals.is_empty()),
    )
    .with(
        "left_basis",
        r.left_integrals.iter().map(|f| functional_json(labels, f)).collect::<Vec<_>>(),
    )
    .with(
        "right_basis",
        r.right_integrals.iter().map(|f| functional_json(labels, f)).collect::<Vec<_>>(),
    )
    .with("left_gram_ranks", r.left_gram_ranks.clone());
    if let Some(b) = r.left_integral_right_invariant {
        integrals = integrals.with("left_integral_right_invariant", b);
    }
    out.push(integrals);
    out.push(
        Stage::new("integral_route.faithful", "faithful functional", Some(r.faithful_left.is_some()))
            .with(
                "left",
                r.faithful_left.as_ref().map(|f| functional_json(labels, f)).unwrap_or(Value::Null),
            )
            .with(
                "right",
                r.faithful_right.as_ref().map(|f| functional_json(labels, f)).unwrap_or(Value::Null),
            ),
    );
    if let Some(g) = &r.galois {
        let mut s = galois_report_stage(g);
        s.name = "integral_route.galois_maps".into();
        out.push(s);
    }
    if let Some(e) = &r.epsilon {
        out.push(
            Stage::new("integral_route.counit", "counit from ε((ι⊗φ)(Δ(a)(1⊗b))) = φ(ab)", Some(true))
                .with("epsilon", functional_json(labels, e)),
        );
    }
    if let Some(s) = &r.antipode {
        let mut st = Stage::new(
            "integral_route.antipode",
            "antipode from S((ι⊗φ)(Δ(a)(1⊗b))) = (ι⊗φ)((1⊗a)Δ(b))",
            Some(true),
        )
        .with("antipode", antipode_json(labels, s))
        .with("invertible", s.is_invertible())
        .with("order", antipode_order(s));
        if let Some(b) = r.antipode_invertible {
            st = st.with("invertible_checked", b);
        }
        out.push(st);
    }
    if let Some(s) = &r.structure {
        out.push(structure_stage("integral_route.identities", s));
    }
    out
}

fn cointegral_route_stages(cm: &ComultMatrix, r: &CointegralRoute) -> Vec<Stage> {
    let labels = cm.algebra().labels();
    let mut out = Vec::new();
    let faith: Vec<Value> = r
        .left_faithfulness
        .iter()
        .map(|f| json!({ "left_leg_dim": f.left_leg_dim, "right_leg_dim": f.right_leg_dim, "faithful": f.faithful() }))
        .collect();
    out.push(
        Stage::new("cointegral_route.cointegrals", "left cointegral", Some(!r.left_cointegrals.is_empty()))
            .with(
                "left_basis",
                r.left_cointegrals.iter().map(|c| element_json(labels, &c.element)).collect::<Vec<_>>(),
            )
            .with(
                "right_basis",
                r.right_cointegrals.iter().map(|c| element_json(labels, &c.element)).collect::<Vec<_>>(),
            )
            .with("left_legs", faith),
    );
    out.push(
        Stage::new("cointegral_route.faithful", "faithful cointegral", Some(r.faithful_left.is_some()))
            .with(
                "left",
                r.faithful_left.as_ref().map(|h| element_json(labels, h)).unwrap_or(Value::Null),
            )
            .with(
                "right",
                r.faithful_right.as_ref().map(|h| element_json(labels, h)).unwrap_or(Value::Null),
            ),
    );
    if let (Some(t1), Some(t2)) = (r.t1_rank, r.t2_rank) {
        let size = cm.dim() * cm.dim();
        out.push(
            Stage::new(
                "cointegral_route.galois_maps",
                "T2 injective and T1 surjective",
                Some(t1 == size && t2 == size),
            )
            .with("size", size)
            .with("T1", t1)
            .with("T2", t2)
            .with("implications", implications_json(&r.implications)),
        );
    }
    if let Some(e) = &r.epsilon {
        out.push(
            Stage::new("cointegral_route.counit", "counit from ah = ε(a)h", Some(true))
                .with("epsilon", functional_json(labels, e)),
        );
    }
    if let Some(s) = &r.antipode {
        out.push(
            Stage::new("cointegral_route.antipode", "antipode from (1⊗a)Δ(h) = (S(a)⊗1)Δ(h)", Some(true))
                .with("antipode", antipode_json(labels, s))
                .with("injective", r.antipode_injective),
        );
    }
    if let Some(s) = &r.structure {
        out.push(structure_stage("cointegral_route.identities", s));
    }
    out
}

/// Compares the two routes. Both solve systems with unique solutions, so any
/// disagreement is an internal inconsistency.
fn cross_check(a: &Verdict, b: &Verdict) -> (Stage, Option<String>) {
    let same_key = a.key() == b.key();
    let (eps, s) = match (a, b) {
        (
            Verdict::Hopf { epsilon: e1, antipode: s1 },
            Verdict::Hopf { epsilon: e2, antipode: s2 },
        ) => (Some(e1 == e2), Some(s1 == s2)),
        _ => (None, None),
    };
    let ok = same_key && eps != Some(false) && s != Some(false);
    let stage = Stage::new("cross_check", "agreement of integral and cointegral routes", Some(ok))
        .with("integral_route", a.key())
        .with("cointegral_route", b.key())
        .with("epsilon_identical", eps)
        .with("antipode_identical", s);
    let issue = (!ok).then(|| {
        format!(
            "routes disagree: integral route says {}, cointegral route says {}{}",
            a.key(),
            b.key(),
            if same_key { " with different ε or S" } else { "" }
        )
    });
    (stage, issue)
}

/// Parses `text`, runs `command` and assembles the report.
pub fn run(source: &str, text: &str, command: Command) -> Result<Report, RunError> {
    let cm = load(text)?;
    Ok(run_on(source, &sha256_hex(text.as_bytes()), &cm, command))
}

/// Runs `command` on an already validated comultiplication.
pub fn run_on(source: &str, digest: &str, cm: &ComultMatrix, command: Command) -> Report {
    let labels = cm.algebra().labels().to_vec();
    let mut report = Report {
        command: command.name().to_string(),
        source: source.to_string(),
        input_digest: digest.to_string(),
        stages: algebra_stages(cm),
        verdict: None,
        verdict_detail: None,
        notes: Vec::new(),
        inconsistencies: Vec::new(),
    };
    let sides = |s: Option<Side>| match s {
        Some(side) => vec![side],
        None => vec![Side::Left, Side::Right],
    };
    match command {
        Command::Check => report.stages.push(galois_stage(cm)),
        Command::Integrals(side) => {
            for s in sides(side) {
                report.stages.push(integral_side_stage(cm, s));
            }
        }
        Command::Cointegrals(side) => {
            for s in sides(side) {
                report.stages.push(cointegral_side_stage(cm, s));
            }
        }
        Command::Construct => {
            let r = classify_detailed(cm);
            report.stages.extend(integral_route_stages(cm, &r));
            let u = uniqueness_report(cm);
            report.stages.push(
                Stage::new(
                    "uniqueness",
                    "kernel dimensions of the homogeneous counit and antipode systems",
                    None,
                )
                .with("counit_left", u.counit_left)
                .with("counit_right", u.counit_right)
                .with("antipode_left", u.antipode_left)
                .with("antipode_right", u.antipode_right),
            );
            report.inconsistencies.extend(r.inconsistencies.iter().cloned());
            report.verdict = Some(r.verdict.key().to_string());
            report.verdict_detail = Some(verdict_json(&labels, &r.verdict));
        }
        Command::Classify(route) => {
            let integral = matches!(route, Route::Integral | Route::Both).then(|| classify_detailed(cm));
            let discrete =
                matches!(route, Route::Cointegral | Route::Both).then(|| classify_discrete_detailed(cm));
            if let Some(r) = &integral {
                report.stages.extend(integral_route_stages(cm, r));
                report.inconsistencies.extend(r.inconsistencies.iter().cloned());
            }
            if let Some(r) = &discrete {
                report.stages.extend(cointegral_route_stages(cm, r));
                report.inconsistencies.extend(r.inconsistencies.iter().cloned());
                report.notes.extend(r.notes.iter().cloned());
            }
            let verdict = match (&integral, &discrete) {
                (Some(a), Some(b)) => {
                    let (stage, issue) = cross_check(&a.verdict, &b.verdict);
                    report.stages.push(stage);
                    report.inconsistencies.extend(issue);
                    &a.verdict
                }
                (Some(a), None) => &a.verdict,
                (None, Some(b)) => &b.verdict,
                (None, None) => unreachable!("at least one route runs"),
            };
            report.verdict = Some(verdict.key().to_string());
            report.verdict_detail = Some(verdict_json(&labels, verdict));
        }
    }
    report
}

/// Runs the `K(G)` sliced-identity suite and wraps it as a report.
pub fn run_kg(group: KgGroup, seed: u64, pairs: usize) -> Report {
    let r: KgReport = match group {
        KgGroup::Integers => run_suite(&Integers, seed, pairs),
        KgGroup::IntegerLattice => run_suite(&IntegerLattice, seed, pairs),
        KgGroup::InfiniteDihedral => run_suite(&InfiniteDihedral, seed, pairs),
    };
    let mut stages = vec![Stage::new("sampling", "deterministic sample of function pairs", None)
        .with("group", r.group.clone())
        .with("seed", r.seed)
        .with("pairs", r.pairs)
        .with("max_slice_support", r.max_slice_support)];
    for c in &r.checks {
        stages.push(
            Stage::new(&format!("kg.{}", c.key), c.formula, Some(c.holds()))
                .with("failures", c.failures)
                .with("max_residual", q(&c.max_residual)),
        );
    }
    let inconsistencies = r
        .checks
        .iter()
        .filter(|c| !c.holds())
        .map(|c| format!("{} fails on {} of {} pairs", c.formula, c.failures, r.pairs))
        .collect();
    Report {
        command: "kg".into(),
        source: r.group.clone(),
        input_digest: sha256_hex(format!("kg {} {} {}", r.group, seed, pairs).as_bytes()),
        stages,
        verdict: None,
        verdict_detail: None,
        notes: vec![
            "Δ(f) is a multiplier of K(G)⊗K(G); only its finite products with elements of K(G)⊗K(G) are formed"
                .into(),
        ],
        inconsistencies,
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(text_value).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(m) if m.contains_key("as") && m.contains_key("coords") => text_value(&m["as"]),
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = " ".repeat(indent);
    match v {
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (i, item) in items.iter().enumerate() {
                write_value(out, indent + 2, &format!("[{i}]"), item);
            }
        }
        Value::Object(m) if !(m.contains_key("as") && m.contains_key("coords")) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (k, item) in m {
                write_value(out, indent + 2, k, item);
            }
        }
        _ => writeln!(out, "{pad}{key}: {}", text_value(v)).unwrap(),
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&report.to_json()).expect("report serialises");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "mha {} report for {}", r.command, r.source).unwrap();
    writeln!(out, "input sha256: {}", r.input_digest).unwrap();
    for s in &r.stages {
        let status = match s.ok {
            Some(true) => "holds",
            Some(false) => "FAILS",
            None => "info",
        };
        writeln!(out, "\n[{}] {}: {}", s.name, s.concept, status).unwrap();
        for (k, v) in &s.details {
            write_value(&mut out, 2, k, v);
        }
    }
    if let (Some(v), Some(detail)) = (&r.verdict, &r.verdict_detail) {
        writeln!(out, "\nverdict: {v}").unwrap();
        if let Value::Object(m) = detail {
            for (k, item) in m.iter().filter(|(k, _)| *k != "verdict") {
                write_value(&mut out, 2, k, item);
            }
        }
    }
    for n in &r.notes {
        writeln!(out, "\nnote: {n}").unwrap();
    }
    if r.inconsistencies.is_empty() {
        writeln!(out, "\ninternal consistency: ok").unwrap();
    } else {
        writeln!(out, "\nINTERNAL INCONSISTENCY:").unwrap();
        for i in &r.inconsistencies {
            writeln!(out, "  {i}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::by_name;
    use crate::specfile::export;

    fn report(name: &str, cmd: Command) -> Report {
        let e = by_name(name).unwrap();
        run(name, &export(&e.comult, None), cmd).unwrap()
    }

    #[test]
    fn c2_json_has_hopf_verdict() {
        let r = report("group-c2", Command::Classify(Route::Both));
        let s = render(&r, Format::Json);
        assert!(s.contains("\"verdict\":\"hopf\""), "{s}");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn construct_c2() {
        let r = report("group-c2", Command::Construct);
        let d = r.verdict_detail.unwrap();
        assert_eq!(d["epsilon"]["coords"], json!(["1", "1"]));
        assert_eq!(d["antipode"]["matrix_rows"], json!([["1", "0"], ["0", "1"]]));
    }

    #[test]
    fn monoid_text_names_definition() {
        let r = report("monoid-bialgebra", Command::Classify(Route::Both));
        assert_eq!(r.verdict.as_deref(), Some("not_hopf"));
        let t = render(&r, Format::Text);
        assert!(t.contains("no faithful left integral"), "{t}");
        assert!(t.contains("violates: faithful functional"), "{t}");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn h4_routes_agree() {
        let r = report("sweedler-h4", Command::Classify(Route::Both));
        let c = r.stage("cross_check").unwrap();
        assert_eq!(c.ok, Some(true));
        assert!(r.inconsistencies.is_empty());
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn rendering_is_deterministic() {
        for cmd in [
            Command::Check,
            Command::Integrals(None),
            Command::Cointegrals(Some(Side::Left)),
            Command::Construct,
            Command::Classify(Route::Both),
        ] {
            let a = report("sweedler-h4", cmd);
            let b = report("sweedler-h4", cmd);
            for f in [Format::Json, Format::Text] {
                assert_eq!(render(&a, f), render(&b, f));
            }
        }
    }

    #[test]
    fn invalid_input_exit_code() {
        let e = run("x", "nonsense", Command::Check).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_INVALID_INPUT);
    }

    #[test]
    fn kg_report_holds() {
        let r = run_kg(KgGroup::InfiniteDihedral, 1, 50);
        assert!(r.inconsistencies.is_empty());
        assert!(r.stages.iter().all(|s| s.ok != Some(false)));
    }
}
