//! `K(G)`: finitely supported functions on a group with pointwise product.
//!
//! For infinite `G` this algebra has no unit and `Δ(f)(g, h) = f(gh)` is not a
//! finite tensor, but each of the four products `Δ(a)(1⊗b)`, `(a⊗1)Δ(b)`,
//! `Δ(a)(b⊗1)`, `(1⊗a)Δ(b)` is. Everything here works through those slices.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::CayleyTable;
use crate::comult::GaloisKind;
use crate::exactlin::{int, ratio, Scalar};

pub trait Group {
    type Elem: Clone + Ord + Debug;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn op(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn label(&self, x: &Self::Elem) -> String;
    /// A pseudo-random element of word length roughly at most `radius`.
    fn sample<R: Rng>(&self, rng: &mut R, radius: i64) -> Self::Elem;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Group for Integers {
    type Elem = i64;

    fn name(&self) -> String {
        "Z".into()
    }
    fn identity(&self) -> i64 {
        0
    }
    fn op(&self, x: &i64, y: &i64) -> i64 {
        x + y
    }
    fn inv(&self, x: &i64) -> i64 {
        -x
    }
    fn label(&self, x: &i64) -> String {
        x.to_string()
    }
    fn sample<R: Rng>(&self, rng: &mut R, radius: i64) -> i64 {
        rng.gen_range(-radius..=radius)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerLattice;

impl Group for IntegerLattice {
    type Elem = (i64, i64);

    fn name(&self) -> String {
        "Z^2".into()
    }
    fn identity(&self) -> (i64, i64) {
        (0, 0)
    }
    fn op(&self, x: &(i64, i64), y: &(i64, i64)) -> (i64, i64) {
        (x.0 + y.0, x.1 + y.1)
    }
    fn inv(&self, x: &(i64, i64)) -> (i64, i64) {
        (-x.0, -x.1)
    }
    fn label(&self, x: &(i64, i64)) -> String {
        format!("({},{})", x.0, x.1)
    }
    fn sample<R: Rng>(&self, rng: &mut R, radius: i64) -> (i64, i64) {
        (rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius))
    }
}

/// `D∞ = ℤ ⋊ ℤ/2`. An element `(k, f)` is the map `n ↦ (−1)^f n + k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct InfiniteDihedral;

impl Group for InfiniteDihedral {
    type Elem = (i64, bool);

    fn name(&self) -> String {
        "D_inf".into()
    }
    fn identity(&self) -> (i64, bool) {
        (0, false)
    }
    fn op(&self, x: &(i64, bool), y: &(i64, bool)) -> (i64, bool) {
        let shift = if x.1 { -y.0 } else { y.0 };
        (x.0 + shift, x.1 ^ y.1)
    }
    fn inv(&self, x: &(i64, bool)) -> (i64, bool) {
        if x.1 {
            *x
        } else {
            (-x.0, false)
        }
    }
    fn label(&self, x: &(i64, bool)) -> String {
        if x.1 {
            format!("r{}", x.0)
        } else {
            format!("t{}", x.0)
        }
    }
    fn sample<R: Rng>(&self, rng: &mut R, radius: i64) -> (i64, bool) {
        (rng.gen_range(-radius..=radius), rng.gen_bool(0.5))
    }
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone)]
pub struct FiniteGroup(pub CayleyTable);

impl Group for FiniteGroup {
    type Elem = usize;

    fn name(&self) -> String {
        format!("finite group of order {}", self.0.order())
    }
    fn identity(&self) -> usize {
        self.0.identity()
    }
    fn op(&self, x: &usize, y: &usize) -> usize {
        self.0.op(*x, *y)
    }
    fn inv(&self, x: &usize) -> usize {
        self.0.inv(*x)
    }
    fn label(&self, x: &usize) -> String {
        self.0.names()[*x].clone()
    }
    fn sample<R: Rng>(&self, rng: &mut R, _radius: i64) -> usize {
        rng.gen_range(0..self.0.order())
    }
}

/// An element of `K(G)`. Zero values are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseFunction<E: Ord>(BTreeMap<E, Scalar>);

impl<E: Ord + Clone> Default for SparseFunction<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Ord + Clone> SparseFunction<E> {
    pub fn zero() -> Self {
        SparseFunction(BTreeMap::new())
    }

    pub fn delta(x: E) -> Self {
        Self::from_pairs([(x, int(1))])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (E, Scalar)>) -> Self {
        let mut f = Self::zero();
        for (x, c) in pairs {
            f.add_at(x, c);
        }
        f
    }

    pub fn get(&self, x: &E) -> Scalar {
        self.0.get(x).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_at(&mut self, x: E, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.0.remove(&x).unwrap_or_else(Scalar::zero) + c;
        if !cur.is_zero() {
            self.0.insert(x, cur);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&E, &Scalar)> {
        self.0.iter()
    }

    pub fn support_size(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pointwise(&self, other: &Self) -> Self {
        Self::from_pairs(
            self.0
                .iter()
                .filter_map(|(x, c)| other.0.get(x).map(|d| (x.clone(), c * d))),
        )
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Self::from_pairs(self.0.iter().map(|(x, v)| (x.clone(), v * c)))
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.0 {
            out.add_at(x.clone(), -c);
        }
        out
    }

    /// Largest absolute value, zero for the zero function.
    pub fn max_abs(&self) -> Scalar {
        self.0.values().map(|c| c.abs()).max().unwrap_or_else(Scalar::zero)
    }
}

/// A finite element of `K(G)⊗K(G)`, as a function on `G×G`.
pub type SparseTensor<E> = SparseFunction<(E, E)>;

pub type FunctionPair<E> = (SparseFunction<E>, SparseFunction<E>);

/// The four Galois products as finite tensors:
/// `T1 = Δ(a)(1⊗b)`: `a(gh)b(h)`; `T2 = (a⊗1)Δ(b)`: `a(g)b(gh)`;
/// `T1' = Δ(a)(b⊗1)`: `a(gh)b(g)`; `T2' = (1⊗a)Δ(b)`: `a(h)b(gh)`.
pub fn slice<G: Group>(
    g: &G,
    kind: GaloisKind,
    a: &SparseFunction<G::Elem>,
    b: &SparseFunction<G::Elem>,
) -> SparseTensor<G::Elem> {
    let mut out = SparseTensor::zero();
    for (x, ax) in a.support() {
        for (y, by) in b.support() {
            let c = ax * by;
            let key = match kind {
                // h = y, gh = x
                GaloisKind::T1 => (g.op(x, &g.inv(y)), y.clone()),
                // g = x, gh = y
                GaloisKind::T2 => (x.clone(), g.op(&g.inv(x), y)),
                // g = y, gh = x
                GaloisKind::T1Prime => (y.clone(), g.op(&g.inv(y), x)),
                // h = x, gh = y
                GaloisKind::T2Prime => (g.op(y, &g.inv(x)), x.clone()),
            };
            out.add_at(key, c);
        }
    }
    out
}

/// `(ι⊗φ)t` with `φ` the counting functional.
pub fn slice_second<E: Ord + Clone>(t: &SparseTensor<E>) -> SparseFunction<E> {
    SparseFunction::from_pairs(t.support().map(|((x, _), c)| (x.clone(), c.clone())))
}

/// `(φ⊗ι)t` with `φ` the counting functional.
pub fn slice_first<E: Ord + Clone>(t: &SparseTensor<E>) -> SparseFunction<E> {
    SparseFunction::from_pairs(t.support().map(|((_, y), c)| (y.clone(), c.clone())))
}

/// The counting functional `f ↦ Σ_g f(g)`, left and right invariant.
pub fn integral<E: Ord + Clone>(f: &SparseFunction<E>) -> Scalar {
    f.support().map(|(_, c)| c.clone()).sum()
}

/// `ε(f) = f(e)`.
pub fn counit<G: Group>(g: &G, f: &SparseFunction<G::Elem>) -> Scalar {
    f.get(&g.identity())
}

/// `S(f)(x) = f(x⁻¹)`.
pub fn antipode<G: Group>(g: &G, f: &SparseFunction<G::Elem>) -> SparseFunction<G::Elem> {
    SparseFunction::from_pairs(f.support().map(|(x, c)| (g.inv(x), c.clone())))
}

/// `m(S⊗ι)t` on a finite tensor.
fn multiply_antipode_first<G: Group>(g: &G, t: &SparseTensor<G::Elem>) -> SparseFunction<G::Elem> {
    SparseFunction::from_pairs(
        t.support()
            .filter(|((x, y), _)| g.inv(x) == *y)
            .map(|((_, y), c)| (y.clone(), c.clone())),
    )
}

/// `m(ι⊗S)t` on a finite tensor.
fn multiply_antipode_second<G: Group>(g: &G, t: &SparseTensor<G::Elem>) -> SparseFunction<G::Elem> {
    SparseFunction::from_pairs(
        t.support()
            .filter(|((x, y), _)| g.inv(y) == *x)
            .map(|((x, _), c)| (x.clone(), c.clone())),
    )
}

/// `(ε⊗ι)t` and `(ι⊗ε)t`.
fn counit_first<G: Group>(g: &G, t: &SparseTensor<G::Elem>) -> SparseFunction<G::Elem> {
    let e = g.identity();
    SparseFunction::from_pairs(
        t.support()
            .filter(|((x, _), _)| *x == e)
            .map(|((_, y), c)| (y.clone(), c.clone())),
    )
}

fn counit_second<G: Group>(g: &G, t: &SparseTensor<G::Elem>) -> SparseFunction<G::Elem> {
    let e = g.identity();
    SparseFunction::from_pairs(
        t.support()
            .filter(|((_, y), _)| *y == e)
            .map(|((x, _), c)| (x.clone(), c.clone())),
    )
}

/// Residuals of the counit and antipode defining formulas for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crosscheck {
    /// `|ε(x) − φ(ab)|` with `x = (ι⊗φ)(Δ(a)(1⊗b))`.
    pub counit_residual: Scalar,
    /// Largest coefficient of `S(x) − (ι⊗φ)((1⊗a)Δ(b))`.
    pub antipode_residual: Scalar,
}

pub fn engine_crosscheck<G: Group>(
    g: &G,
    a: &SparseFunction<G::Elem>,
    b: &SparseFunction<G::Elem>,
) -> Crosscheck {
    let x = slice_second(&slice(g, GaloisKind::T1, a, b));
    let counit_residual = (counit(g, &x) - integral(&a.pointwise(b))).abs();
    let rhs = slice_second(&slice(g, GaloisKind::T2Prime, a, b));
    let antipode_residual = antipode(g, &x).minus(&rhs).max_abs();
    Crosscheck {
        counit_residual,
        antipode_residual,
    }
}

/// One sampled identity: how many pairs violated it and the worst residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KgCheck {
    pub key: &'static str,
    pub formula: &'static str,
    pub failures: usize,
    pub max_residual: Scalar,
}

impl KgCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KgReport {
    pub group: String,
    pub seed: u64,
    pub pairs: usize,
    /// Largest support among all computed slices (finite by construction).
    pub max_slice_support: usize,
    pub checks: Vec<KgCheck>,
}

impl KgReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(KgCheck::holds)
    }

    pub fn get(&self, key: &str) -> Option<&KgCheck> {
        self.checks.iter().find(|c| c.key == key)
    }
}

/// Default number of sampled pairs.
pub const DEFAULT_PAIRS: usize = 64;
const SAMPLE_RADIUS: i64 = 5;
const MAX_SUPPORT: usize = 3;

/// A random function with 1 to 3 support points and small rational values.
pub fn sample_function<G: Group, R: Rng>(g: &G, rng: &mut R) -> SparseFunction<G::Elem> {
    loop {
        let k = rng.gen_range(1..=MAX_SUPPORT);
        let f = SparseFunction::from_pairs((0..k).map(|_| {
            let p = rng.gen_range(-4i64..=4);
            let q = rng.gen_range(1i64..=3);
            (g.sample(rng, SAMPLE_RADIUS), ratio(p, q))
        }));
        if !f.is_zero() {
            return f;
        }
    }
}

/// Deterministic sample of `pairs` function pairs from `seed`.
pub fn sample_pairs<G: Group>(
    g: &G,
    seed: u64,
    pairs: usize,
) -> Vec<FunctionPair<G::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..pairs)
        .map(|_| (sample_function(g, &mut rng), sample_function(g, &mut rng)))
        .collect()
}

struct Tally {
    key: &'static str,
    formula: &'static str,
    failures: usize,
    max: Scalar,
}

impl Tally {
    fn new(key: &'static str, formula: &'static str) -> Self {
        Tally {
            key,
            formula,
            failures: 0,
            max: Scalar::zero(),
        }
    }

    fn record(&mut self, residual: Scalar) {
        if !residual.is_zero() {
            self.failures += 1;
        }
        if residual > self.max {
            self.max = residual;
        }
    }

    fn finish(self) -> KgCheck {
        KgCheck {
            key: self.key,
            formula: self.formula,
            failures: self.failures,
            max_residual: self.max,
        }
    }
}

/// Runs every sliced identity on a deterministic sample of pairs.
pub fn run_suite<G: Group>(g: &G, seed: u64, pairs: usize) -> KgReport {
    let samples = sample_pairs(g, seed, pairs);
    let mut axioms = Tally::new("group_axioms", "(xy)z = x(yz), xe = x, xx⁻¹ = e");
    let mut left = Tally::new("left_invariance", "(ι⊗φ)((b⊗1)Δ(a)) = φ(a)b");
    let mut right = Tally::new("right_invariance", "(φ⊗ι)(Δ(a)(1⊗b)) = φ(a)b");
    let mut eps_mult = Tally::new("counit_multiplicative", "ε(ab) = ε(a)ε(b)");
    let mut eps_left = Tally::new("counit_left", "(ε⊗ι)(Δ(a)(1⊗b)) = ab");
    let mut eps_right = Tally::new("counit_right", "(ι⊗ε)((a⊗1)Δ(b)) = ab");
    let mut s_mult = Tally::new("antipode_anti_multiplicative", "S(ab) = S(b)S(a)");
    let mut s_inv = Tally::new("antipode_involution", "S(S(a)) = a");
    let mut s_right = Tally::new("antipode_right_convolution", "m(S⊗ι)(Δ(a)(1⊗b)) = ε(a)b");
    let mut s_left = Tally::new("antipode_left_convolution", "m(ι⊗S)((a⊗1)Δ(b)) = ε(b)a");
    let mut cross_eps = Tally::new("crosscheck_counit", "ε((ι⊗φ)(Δ(a)(1⊗b))) = φ(ab)");
    let mut cross_s = Tally::new(
        "crosscheck_antipode",
        "S((ι⊗φ)(Δ(a)(1⊗b))) = (ι⊗φ)((1⊗a)Δ(b))",
    );
    let mut max_slice_support = 0;

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for (a, b) in &samples {
        let (x, y, z) = (
            g.sample(&mut rng, SAMPLE_RADIUS),
            g.sample(&mut rng, SAMPLE_RADIUS),
            g.sample(&mut rng, SAMPLE_RADIUS),
        );
        let ok = g.op(&g.op(&x, &y), &z) == g.op(&x, &g.op(&y, &z))
            && g.op(&x, &g.identity()) == x
            && g.op(&g.identity(), &x) == x
            && g.op(&x, &g.inv(&x)) == g.identity();
        axioms.record(if ok { Scalar::zero() } else { int(1) });

        let t: Vec<_> = GaloisKind::ALL.iter().map(|&k| slice(g, k, a, b)).collect();
        max_slice_support = t
            .iter()
            .map(SparseFunction::support_size)
            .max()
            .unwrap_or(0)
            .max(max_slice_support);
        let t1 = &t[0];

        let ba = slice(g, GaloisKind::T2, b, a);
        left.record(slice_second(&ba).minus(&b.scaled(&integral(a))).max_abs());
        right.record(slice_first(t1).minus(&b.scaled(&integral(a))).max_abs());

        let ab = a.pointwise(b);
        eps_mult.record((counit(g, &ab) - counit(g, a) * counit(g, b)).abs());
        eps_left.record(counit_first(g, t1).minus(&ab).max_abs());
        let t2 = slice(g, GaloisKind::T2, a, b);
        eps_right.record(counit_second(g, &t2).minus(&ab).max_abs());

        s_mult.record(
            antipode(g, &ab)
                .minus(&antipode(g, b).pointwise(&antipode(g, a)))
                .max_abs(),
        );
        s_inv.record(antipode(g, &antipode(g, a)).minus(a).max_abs());
        s_right.record(
            multiply_antipode_first(g, t1)
                .minus(&b.scaled(&counit(g, a)))
                .max_abs(),
        );
        s_left.record(
            multiply_antipode_second(g, &t2)
                .minus(&a.scaled(&counit(g, b)))
                .max_abs(),
        );

        let c = engine_crosscheck(g, a, b);
        cross_eps.record(c.counit_residual);
        cross_s.record(c.antipode_residual);
    }

    KgReport {
        group: g.name(),
        seed,
        pairs: samples.len(),
        max_slice_support,
        checks: [
            axioms, left, right, eps_mult, eps_left, eps_right, s_mult, s_inv, s_right, s_left,
            cross_eps, cross_s,
        ]
        .into_iter()
        .map(Tally::finish)
        .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64) -> SparseFunction<i64> {
        SparseFunction::delta(x)
    }

    #[test]
    fn slices_on_integers() {
        let g = Integers;
        let t1 = slice(&g, GaloisKind::T1, &d(2), &d(3));
        assert_eq!(t1, SparseTensor::delta((-1, 3)));
        let t2 = slice(&g, GaloisKind::T2, &d(2), &d(3));
        assert_eq!(t2, SparseTensor::delta((2, 1)));
    }

    #[test]
    fn slices_match_brute_force_on_lattice() {
        let g = IntegerLattice;
        let f = SparseFunction::from_pairs([((0, 0), int(1)), ((1, -1), int(2)), ((2, 3), ratio(1, 2))]);
        let h = SparseFunction::from_pairs([((0, 1), int(-1)), ((1, 1), int(3)), ((-2, 0), int(5))]);
        // evaluate the closed forms on a box containing every possible support point
        let pts: Vec<(i64, i64)> = (-6..=6).flat_map(|x| (-6..=6).map(move |y| (x, y))).collect();
        for kind in GaloisKind::ALL {
            let t = slice(&g, kind, &f, &h);
            let mut brute = SparseTensor::zero();
            for p in &pts {
                for q in &pts {
                    let pq = g.op(p, q);
                    let v = match kind {
                        GaloisKind::T1 => f.get(&pq) * h.get(q),
                        GaloisKind::T2 => f.get(p) * h.get(&pq),
                        GaloisKind::T1Prime => f.get(&pq) * h.get(p),
                        GaloisKind::T2Prime => f.get(q) * h.get(&pq),
                    };
                    brute.add_at((*p, *q), v);
                }
            }
            assert_eq!(t, brute, "{kind}");
        }
    }

    #[test]
    fn counting_functional_and_closed_forms() {
        let g = Integers;
        assert_eq!(integral(&d(5)), int(1));
        let f = SparseFunction::from_pairs([(0, int(2)), (1, int(3))]);
        assert_eq!(integral(&f), int(5));
        assert_eq!(counit(&g, &d(0)), int(1));
        assert_eq!(counit(&g, &d(3)), int(0));
        assert_eq!(antipode(&g, &d(3)), d(-3));
    }

    #[test]
    fn crosscheck_examples() {
        let g = Integers;
        let c = engine_crosscheck(&g, &d(2), &d(3));
        assert!(c.counit_residual.is_zero() && c.antipode_residual.is_zero());
        assert_eq!(slice_second(&slice(&g, GaloisKind::T1, &d(2), &d(3))), d(-1));
        let c = engine_crosscheck(&g, &d(0), &d(0));
        assert!(c.counit_residual.is_zero() && c.antipode_residual.is_zero());
    }

    #[test]
    fn dihedral_is_nonabelian() {
        let g = InfiniteDihedral;
        let t = (1, false);
        let r = (0, true);
        assert_ne!(g.op(&t, &r), g.op(&r, &t));
        assert_eq!(g.op(&r, &r), g.identity());
        assert_eq!(g.op(&t, &g.inv(&t)), g.identity());
    }

    #[test]
    fn suites_hold() {
        assert!(run_suite(&Integers, 7, DEFAULT_PAIRS).all_hold());
        assert!(run_suite(&IntegerLattice, 7, DEFAULT_PAIRS).all_hold());
        assert!(run_suite(&InfiniteDihedral, 7, DEFAULT_PAIRS).all_hold());
        assert!(run_suite(&FiniteGroup(CayleyTable::symmetric3()), 7, DEFAULT_PAIRS).all_hold());
    }

    #[test]
    fn wrong_antipode_breaks_crosscheck() {
        // identity in place of inversion on a non-abelian group
        let g = InfiniteDihedral;
        let a = SparseFunction::delta((1, false));
        let b = SparseFunction::delta((0, false));
        let x = slice_second(&slice(&g, GaloisKind::T1, &a, &b));
        let rhs = slice_second(&slice(&g, GaloisKind::T2Prime, &a, &b));
        assert_ne!(x, rhs);
        assert_eq!(antipode(&g, &x), rhs);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_pairs(&InfiniteDihedral, 42, 10);
        let b = sample_pairs(&InfiniteDihedral, 42, 10);
        assert_eq!(a, b);
    }
}
