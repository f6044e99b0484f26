//! Deterministic builders for the worked examples and counterexamples.
//!
//! Known values (expected verdict, counit, antipode) are hand-derived from the
//! defining relations of each example and stored alongside the structure so
//! tests can compare against them.

use num_traits::One;
use thiserror::Error;

use crate::algebra::{FinDimAlgebra, StructureConstants};
use crate::comult::ComultMatrix;
use crate::exactlin::{int, zeros, Matrix, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("Cayley table is empty")]
    Empty,
    #[error("Cayley table row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("Cayley table entry ({0}, {1}) is out of range")]
    OutOfRange(usize, usize),
    #[error("Cayley table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("Cayley table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("expected {expected} element names, got {got}")]
    Names { expected: usize, got: usize },
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl CayleyTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, CayleyError> {
        let n = table.len();
        if n == 0 {
            return Err(CayleyError::Empty);
        }
        if names.len() != n {
            return Err(CayleyError::Names {
                expected: n,
                got: names.len(),
            });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(CayleyError::Ragged {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            if let Some(col) = r.iter().position(|&x| x >= n) {
                return Err(CayleyError::OutOfRange(row, col));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(CayleyError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(CayleyError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or(CayleyError::NoInverse(g))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            names,
            table,
            identity,
            inverse,
        })
    }

    /// `C_n` with elements `e, c, c2, …`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "c".to_string(),
                _ => format!("c{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table).expect("cyclic table is a group")
    }

    /// `S_3` as permutations of `{0, 1, 2}`, composed as `(p∘q)(i) = p(q(i))`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let names = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
            .map(String::from)
            .to_vec();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        Self::new(names, table).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Hopf { epsilon: Vector, antipode: Matrix },
    NotHopf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub comult: ComultMatrix,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn algebra(&self) -> &FinDimAlgebra {
        self.comult.algebra()
    }
}

fn permutation_matrix(n: usize, image: impl Fn(usize) -> usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        m.set(image(j), j, Scalar::one());
    }
    m
}

/// `ℚ[G]` with `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn build_group_algebra(name: &str, g: &CayleyTable) -> CatalogEntry {
    let n = g.order();
    let consts =
        StructureConstants::from_entries(n, (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, g.op(a, b), int(1))));
    let alg = FinDimAlgebra::validate(g.names().to_vec(), consts, None)
        .expect("group algebra is a valid unital algebra");
    let comult = ComultMatrix::from_entries(alg, (0..n).map(|i| (i, i, i, int(1))), true)
        .expect("group-like comultiplication is valid");
    CatalogEntry {
        name: name.to_string(),
        comult,
        expected: Expected::Hopf {
            epsilon: vec![int(1); n],
            antipode: permutation_matrix(n, |j| g.inv(j)),
        },
    }
}

/// `F(G)`: pointwise product on `δ_g`, `Δ(δ_g) = Σ_{hk=g} δ_h⊗δ_k`,
/// `ε(δ_g) = [g = e]`, `S(δ_g) = δ_{g⁻¹}`.
pub fn build_function_algebra(name: &str, g: &CayleyTable) -> CatalogEntry {
    let n = g.order();
    let consts = StructureConstants::from_entries(n, (0..n).map(|a| (a, a, a, int(1))));
    let labels = g.names().iter().map(|s| format!("d{s}")).collect();
    let alg = FinDimAlgebra::validate(labels, consts, None)
        .expect("function algebra is a valid unital algebra");
    let entries: Vec<_> = (0..n)
        .flat_map(|h| (0..n).map(move |k| (h, k)))
        .map(|(h, k)| (g.op(h, k), h, k, int(1)))
        .collect();
    let comult = ComultMatrix::from_entries(alg, entries, true)
        .expect("dual-group comultiplication is valid");
    let mut epsilon = zeros(n);
    epsilon[g.identity()] = Scalar::one();
    CatalogEntry {
        name: name.to_string(),
        comult,
        expected: Expected::Hopf {
            epsilon,
            antipode: permutation_matrix(n, |j| g.inv(j)),
        },
    }
}

/// Sweedler's 4-dimensional algebra on the basis `(1, g, x, gx)`:
/// `g² = 1`, `x² = 0`, `xg = −gx`, `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`.
pub fn build_sweedler_h4() -> CatalogEntry {
    // basis index = a + 2b for g^a x^b
    let idx = |a: usize, b: usize| a + 2 * b;
    let mut entries = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if b + d >= 2 {
                        continue;
                    }
                    // g^a x^b g^c x^d = (-1)^{bc} g^{a+c} x^{b+d}
                    let sign = if b * c == 1 { -1 } else { 1 };
                    entries.push((idx(a, b), idx(c, d), idx((a + c) % 2, b + d), int(sign)));
                }
            }
        }
    }
    let consts = StructureConstants::from_entries(4, entries);
    let labels = ["1", "g", "x", "gx"].map(String::from).to_vec();
    let alg = FinDimAlgebra::validate(labels, consts, Some(vec![int(1), int(0), int(0), int(0)]))
        .expect("Sweedler algebra is valid");
    let delta = [
        (0, 0, 0, int(1)), // Δ(1) = 1⊗1
        (1, 1, 1, int(1)), // Δ(g) = g⊗g
        (2, 2, 0, int(1)), // Δ(x) = x⊗1 + g⊗x
        (2, 1, 2, int(1)),
        (3, 3, 1, int(1)), // Δ(gx) = gx⊗g + 1⊗gx
        (3, 0, 3, int(1)),
    ];
    let comult = ComultMatrix::from_entries(alg, delta, true).expect("Sweedler Δ is valid");
    // S(1)=1, S(g)=g, S(x)=-gx, S(gx)=x; columns are images.
    let antipode = Matrix::from_i64(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 0, 1],
        &[0, 0, -1, 0],
    ]);
    CatalogEntry {
        name: "sweedler-h4".to_string(),
        comult,
        expected: Expected::Hopf {
            epsilon: vec![int(1), int(1), int(0), int(0)],
            antipode,
        },
    }
}

/// `ℚ[{1, s}]` with `s² = s` and group-like `Δ`: a unital, counital, full
/// bialgebra that is not Hopf.
pub fn build_monoid_bialgebra() -> CatalogEntry {
    let consts = StructureConstants::from_entries(
        2,
        [
            (0, 0, 0, int(1)),
            (0, 1, 1, int(1)),
            (1, 0, 1, int(1)),
            (1, 1, 1, int(1)),
        ],
    );
    let alg = FinDimAlgebra::validate(vec!["1".into(), "s".into()], consts, None)
        .expect("monoid algebra is valid");
    let comult = ComultMatrix::from_entries(alg, [(0, 0, 0, int(1)), (1, 1, 1, int(1))], true)
        .expect("monoid Δ is valid");
    CatalogEntry {
        name: "monoid-bialgebra".to_string(),
        comult,
        expected: Expected::NotHopf,
    }
}

/// Every catalog entry, in a fixed order.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    vec![
        build_group_algebra("group-c2", &CayleyTable::cyclic(2)),
        build_group_algebra("group-c3", &CayleyTable::cyclic(3)),
        build_group_algebra("group-s3", &CayleyTable::symmetric3()),
        build_function_algebra("functions-c2", &CayleyTable::cyclic(2)),
        build_function_algebra("functions-s3", &CayleyTable::symmetric3()),
        build_sweedler_h4(),
        build_monoid_bialgebra(),
    ]
}

pub fn by_name(name: &str) -> Option<CatalogEntry> {
    standard_catalog().into_iter().find(|e| e.name == name)
}
