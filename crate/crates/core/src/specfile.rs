//! Line-oriented text format for an algebra with comultiplication.
//!
//! ```text
//! mha-spec v1
//! # group algebra of C2
//! dim 2
//! basis e s
//! unit 1 0
//! m 0 0 0 1
//! m 0 1 1 1
//! m 1 0 1 1
//! m 1 1 0 1
//! d 0 0 0 1
//! d 1 1 1 1
//! ```
//!
//! `m i j k c`: coefficient `c` of `b_k` in `b_i·b_j`.
//! `d i j k c`: coefficient `c` of `b_j⊗b_k` in `Δ(b_i)`. Omitted coefficients are zero.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, FinDimAlgebra, StructureConstants};
use crate::comult::{ComultError, ComultMatrix};
use crate::exactlin::{format_scalar, parse_scalar, Scalar, Vector};

pub const HEADER: &str = "mha-spec v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecErrorKind {
    #[error("expected header `{HEADER}`")]
    MissingHeader,
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("{0}")]
    Syntax(String),
    #[error("`{0}` given more than once")]
    Duplicate(String),
    #[error("`{0}` must come after `dim`")]
    BeforeDim(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("expected {expected} values, got {got}")]
    Count { expected: usize, got: usize },
    #[error("missing `{0}` line")]
    Missing(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: SpecErrorKind },
    #[error("invalid algebra: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("invalid comultiplication: {0}")]
    Comult(#[from] ComultError),
}

impl SpecError {
    pub fn line(&self) -> Option<usize> {
        match self {
            SpecError::Parse { line, .. } => Some(*line),
            _ => None,
        }
    }
}

type Entry = (usize, usize, usize, Scalar);

/// Parsed but not yet validated file contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub version: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Option<Vector>,
    pub products: Vec<Entry>,
    pub coproducts: Vec<Entry>,
}

impl SpecFile {
    /// Validates the algebra (associativity, non-degeneracy, unit) and then `Δ`.
    pub fn build(&self) -> Result<ComultMatrix, SpecError> {
        let consts = StructureConstants::from_entries(self.dim, self.products.iter().cloned());
        let alg = FinDimAlgebra::validate(self.basis.clone(), consts, self.unit.clone())?;
        Ok(ComultMatrix::from_entries(alg, self.coproducts.iter().cloned(), true)?)
    }
}

pub fn parse_spec_file(text: &str) -> Result<SpecFile, SpecError> {
    let err = |line: usize, kind| SpecError::Parse { line, kind };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((n, _)) => return Err(err(n, SpecErrorKind::MissingHeader)),
        None => return Err(err(1, SpecErrorKind::MissingHeader)),
    }

    let mut dim: Option<usize> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut unit: Option<Vector> = None;
    let mut products = Vec::new();
    let mut coproducts = Vec::new();
    let mut seen_m = BTreeSet::new();
    let mut seen_d = BTreeSet::new();
    let mut last_line = 1;

    for (n, line) in lines {
        last_line = n;
        let mut words = line.split_whitespace();
        let directive = words.next().expect("line is non-empty");
        let args: Vec<&str> = words.collect();
        if directive != "dim" && dim.is_none() {
            return Err(err(n, SpecErrorKind::BeforeDim(directive.to_string())));
        }
        match directive {
            "dim" => {
                if dim.is_some() {
                    return Err(err(n, SpecErrorKind::Duplicate("dim".into())));
                }
                let [d] = args[..] else {
                    return Err(err(n, SpecErrorKind::Syntax("expected `dim N`".into())));
                };
                let d: usize = d
                    .parse()
                    .map_err(|_| err(n, SpecErrorKind::Syntax(format!("bad dimension `{d}`"))))?;
                dim = Some(d);
            }
            "basis" => {
                if basis.is_some() {
                    return Err(err(n, SpecErrorKind::Duplicate("basis".into())));
                }
                let d = dim.unwrap_or_default();
                if args.len() != d {
                    return Err(err(n, SpecErrorKind::Count { expected: d, got: args.len() }));
                }
                basis = Some(args.iter().map(|s| s.to_string()).collect());
            }
            "unit" => {
                if unit.is_some() {
                    return Err(err(n, SpecErrorKind::Duplicate("unit".into())));
                }
                let d = dim.unwrap_or_default();
                if args.len() != d {
                    return Err(err(n, SpecErrorKind::Count { expected: d, got: args.len() }));
                }
                let coords = args
                    .iter()
                    .map(|s| parse_scalar(s).map_err(|_| err(n, SpecErrorKind::MalformedRational(s.to_string()))))
                    .collect::<Result<Vector, _>>()?;
                unit = Some(coords);
            }
            "m" | "d" => {
                let d = dim.unwrap_or_default();
                let [i, j, k, c] = args[..] else {
                    return Err(err(
                        n,
                        SpecErrorKind::Syntax(format!("expected `{directive} i j k p/q`")),
                    ));
                };
                let mut idx = [0usize; 3];
                for (slot, s) in idx.iter_mut().zip([i, j, k]) {
                    let v: usize = s
                        .parse()
                        .map_err(|_| err(n, SpecErrorKind::Syntax(format!("bad index `{s}`"))))?;
                    if v >= d {
                        return Err(err(n, SpecErrorKind::IndexOutOfRange { index: v, dim: d }));
                    }
                    *slot = v;
                }
                let c = parse_scalar(c).map_err(|_| err(n, SpecErrorKind::MalformedRational(c.to_string())))?;
                let seen = if directive == "m" { &mut seen_m } else { &mut seen_d };
                if !seen.insert(idx) {
                    return Err(err(
                        n,
                        SpecErrorKind::Duplicate(format!("{directive} {} {} {}", idx[0], idx[1], idx[2])),
                    ));
                }
                let entry = (idx[0], idx[1], idx[2], c);
                if directive == "m" {
                    products.push(entry);
                } else {
                    coproducts.push(entry);
                }
            }
            other => return Err(err(n, SpecErrorKind::UnknownDirective(other.to_string()))),
        }
    }

    let dim = dim.ok_or(err(last_line, SpecErrorKind::Missing("dim")))?;
    let basis = basis.ok_or(err(last_line, SpecErrorKind::Missing("basis")))?;
    Ok(SpecFile {
        version: 1,
        dim,
        basis,
        unit,
        products,
        coproducts,
    })
}

/// Parses and validates in one step.
pub fn load(text: &str) -> Result<ComultMatrix, SpecError> {
    parse_spec_file(text)?.build()
}

/// Canonical text for a validated comultiplication. Entries are sorted and
/// zero coefficients omitted, so `load(export(cm)) == cm`.
pub fn export(cm: &ComultMatrix, comment: Option<&str>) -> String {
    let alg = cm.algebra();
    let n = alg.dim();
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(out, "# {line}").unwrap();
        }
    }
    writeln!(out, "dim {n}").unwrap();
    writeln!(out, "basis {}", alg.labels().join(" ")).unwrap();
    if let Some(u) = alg.unit() {
        let coords: Vec<String> = u.iter().map(format_scalar).collect();
        writeln!(out, "unit {}", coords.join(" ")).unwrap();
    }
    for i in 0..n {
        for j in 0..n {
            let mut terms = alg.constants().basis_product(i, j).to_vec();
            terms.sort_by_key(|(k, _)| *k);
            for (k, c) in terms {
                if !c.is_zero() {
                    writeln!(out, "m {i} {j} {k} {}", format_scalar(&c)).unwrap();
                }
            }
        }
    }
    for i in 0..n {
        let d = cm.delta_basis(i);
        for j in 0..n {
            for k in 0..n {
                let c = &d[j * n + k];
                if !c.is_zero() {
                    writeln!(out, "d {i} {j} {k} {}", format_scalar(c)).unwrap();
                }
            }
        }
    }
    out
}
