//! Predicates for each registered claim.
//!
//! Rational bound expressions are compared exactly with [`Ratio`]; square
//! roots are squared away where the other side is a non-negative integer.
//! Only expressions with logarithms, fractional powers or irrational
//! exponents go through `f64`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::context::{ClassStats, Corpus, CorpusTree};
use super::{Failure, Outcome, Scalar, Values, Witness};
use crate::construct::{caterpillar, fibonacci_caterpillar};
use crate::degseq::{fibonacci_terms, DegreeSequence, FibonacciConvention};
use crate::format::write_graph6;
use crate::indices::{
    albertson, albertson_degree_formula, caterpillar_irr_formula, general_albertson, pairwise_squared_gaps, sigma,
};

/// Relative slack for floating-point comparisons whose two sides can be
/// equal in exact arithmetic.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Exact fraction with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    /// `None` when `den == 0`.
    pub fn new(num: i128, den: i128) -> Option<Self> {
        match den.cmp(&0) {
            Ordering::Equal => None,
            Ordering::Greater => Some(Self { num, den }),
            Ordering::Less => Some(Self { num: -num, den: -den }),
        }
    }

    pub fn int(value: i128) -> Self {
        Self { num: value, den: 1 }
    }

    pub fn add(self, other: Self) -> Self {
        Self {
            num: self.num * other.den + other.num * self.den,
            den: self.den * other.den,
        }
    }

    pub fn cmp_int(self, value: i128) -> Ordering {
        self.num.cmp(&(value * self.den))
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl From<Ratio> for Scalar {
    fn from(r: Ratio) -> Self {
        if r.num % r.den == 0 {
            Scalar::Int(clamp_i64(r.num / r.den))
        } else {
            Scalar::Real(r.to_f64())
        }
    }
}

fn clamp_i64(v: i128) -> i64 {
    v.clamp(i64::MIN as i128, i64::MAX as i128) as i64
}

/// Smallest `k` with `2^k >= x`, for `x >= 1`.
pub fn ceil_log2(x: u128) -> i128 {
    assert!(x >= 1);
    (128 - (x - 1).leading_zeros()) as i128
}

/// Natural log of the binomial coefficient `C(a, b)`; `None` when it is 0.
pub fn ln_binomial(a: u64, b: u64) -> Option<f64> {
    if b > a {
        return None;
    }
    let b = b.min(a - b);
    Some((0..b).map(|i| ((a - i) as f64).ln() - ((i + 1) as f64).ln()).sum())
}

fn pow_sat(base: i128, exp: u32) -> i128 {
    base.checked_pow(exp).unwrap_or(i128::MAX)
}

fn vars<const N: usize>(pairs: [(&str, Scalar); N]) -> BTreeMap<String, Scalar> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn fail(witness: Witness, left: impl Into<Scalar>, middle: Option<Scalar>, right: impl Into<Scalar>) -> Failure {
    Failure {
        witness,
        values: Values {
            left: left.into(),
            middle,
            right: right.into(),
        },
        free_vars: BTreeMap::new(),
    }
}

fn tree_witness(t: &CorpusTree) -> Witness {
    Witness::Graph(t.graph6.clone())
}

fn class_witness(corpus: &Corpus, stats: &ClassStats, position: usize) -> Witness {
    Witness::Graph(corpus.tree_at(stats.n, position).graph6.clone())
}

fn i(v: impl TryInto<i128>) -> i128 {
    v.try_into().ok().expect("value fits in i128")
}

// ---------------------------------------------------------------- per tree

pub(super) fn total_vs_albertson_quadratic(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let n = i(b.n);
    if 4 * i(b.irr_t) <= n * n * i(b.irr) {
        Outcome::Holds
    } else {
        let right = Ratio::new(n * n * i(b.irr), 4).unwrap();
        Outcome::Fails(fail(tree_witness(t), b.irr_t, None, right))
    }
}

pub(super) fn total_vs_albertson_tree(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let right = (i(b.n) - 2) * i(b.irr);
    if i(b.irr_t) <= right {
        Outcome::Holds
    } else {
        Outcome::Fails(fail(tree_witness(t), b.irr_t, None, clamp_i64(right)))
    }
}

pub(super) fn holder_product(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let right = b.forgotten as f64 - 2.0 * b.m2 as f64;
    for (p, q) in [(2.0, 2.0), (3.0, 1.5)] {
        let left = general_albertson(&t.tree, p).expect("p > 0") * general_albertson(&t.tree, q).expect("q > 0");
        if left < right - FLOAT_TOLERANCE * right.abs().max(1.0) {
            let mut f = fail(tree_witness(t), left, None, right);
            f.free_vars = vars([("p", Scalar::Real(p)), ("q", Scalar::Real(q))]);
            return Outcome::Fails(f);
        }
    }
    Outcome::Holds
}

fn lambda_values(t: &CorpusTree) -> BTreeSet<u32> {
    let mut degrees = t.tree.degrees().to_vec();
    let top = degrees.iter().enumerate().max_by_key(|&(_, d)| *d).map(|(idx, _)| idx);
    if let Some(idx) = top {
        degrees.swap_remove(idx);
    }
    degrees.into_iter().filter(|&d| d >= 3).map(|d| d as u32).collect()
}

pub(super) fn albertson_lambda_bounds(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let lambdas = lambda_values(t);
    if lambdas.is_empty() {
        return Outcome::Vacuous("no vertex of degree >= 3 besides the maximum-degree vertex".into());
    }
    let (n, irr) = (i(b.n), i(b.irr));
    for &lambda in &lambdas {
        let lower = pow_sat(2, lambda);
        let upper = (n - 1).saturating_mul(pow_sat(n - 2, lambda));
        if !(lower <= irr && irr <= upper) {
            let mut f = fail(tree_witness(t), clamp_i64(lower), Some(Scalar::Int(clamp_i64(irr))), clamp_i64(upper));
            f.free_vars = vars([("lambda", Scalar::Int(lambda as i64))]);
            return Outcome::Fails(f);
        }
    }
    Outcome::Holds
}

pub(super) fn sigma_lambda_bounds(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let lambdas = lambda_values(t);
    if lambdas.is_empty() {
        return Outcome::Vacuous("no vertex of degree >= 3 besides the maximum-degree vertex".into());
    }
    let (n, s) = (i(b.n), i(b.sigma));
    let (delta_min, delta_max) = (i(b.min_degree), i(b.max_degree));
    for &lambda in &lambdas {
        let lower = pow_sat(3 * delta_min, lambda);
        let upper = (delta_max - 1).saturating_mul(pow_sat(n - 2, lambda));
        if !(lower <= s && s <= upper) {
            let mut f = fail(tree_witness(t), clamp_i64(lower), Some(Scalar::Int(clamp_i64(s))), clamp_i64(upper));
            f.free_vars = vars([("lambda", Scalar::Int(lambda as i64))]);
            return Outcome::Fails(f);
        }
    }
    Outcome::Holds
}

/// The three tested exponents: both ends of `[0, 1]` and `n / (Δ² - 1)`
/// clamped into it.
fn alphas(n: usize, delta: usize) -> [f64; 3] {
    let denom = (delta * delta) as f64 - 1.0;
    let chosen = if denom <= 0.0 { 1.0 } else { (n as f64 / denom).clamp(0.0, 1.0) };
    [0.0, 1.0, chosen]
}

fn alpha_bound(t: &CorpusTree, value: u64, base: i128) -> Outcome {
    let b = &t.bundle;
    let tail = i(b.max_degree * b.max_degree) - i(b.n * b.min_degree);
    for alpha in alphas(b.n, b.max_degree) {
        let bound = base as f64 * alpha.exp2() + tail as f64;
        if value as f64 > bound {
            let mut f = fail(tree_witness(t), value, None, bound);
            f.free_vars = vars([("alpha", Scalar::Real(alpha)), ("floor_term", Scalar::Int(clamp_i64(base)))]);
            return Outcome::Fails(f);
        }
    }
    Outcome::Holds
}

pub(super) fn albertson_alpha_bound(t: &CorpusTree) -> Outcome {
    let n = i(t.bundle.n);
    alpha_bound(t, t.bundle.irr, (3 * n * n - 10 * n).div_euclid(2))
}

pub(super) fn sigma_alpha_bound(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let (n, m, delta) = (i(b.n), i(b.m), i(b.max_degree));
    if delta == 0 {
        return Outcome::Vacuous("maximum degree 0".into());
    }
    alpha_bound(t, b.sigma, (3 * n.pow(4) - 2 * m * n).div_euclid(delta))
}

/// `value >= sqrt(radicand / (Δ(Δ-1)))`, checked as `value² Δ(Δ-1) >= radicand`.
fn radical_lower_bound(t: &CorpusTree, value: u64, radicand: i128) -> Outcome {
    let delta = i(t.bundle.max_degree);
    if delta < 2 {
        return Outcome::Vacuous("maximum degree below 2".into());
    }
    if radicand < 0 {
        return Outcome::Vacuous("negative radicand".into());
    }
    let den = delta * (delta - 1);
    if i(value) * i(value) * den >= radicand {
        Outcome::Holds
    } else {
        let right = (radicand as f64 / den as f64).sqrt();
        let mut f = fail(tree_witness(t), value, None, right);
        f.free_vars = vars([("radicand_numerator", Scalar::Int(clamp_i64(radicand)))]);
        Outcome::Fails(f)
    }
}

pub(super) fn albertson_zagreb_bound(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let radicand = i(b.forgotten) + 2 * i(b.m2) - i(b.n * b.max_degree);
    radical_lower_bound(t, b.irr, radicand)
}

pub(super) fn sigma_zagreb_bound(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let radicand = 5 * i(b.forgotten) + 4 * i(b.m2) - i(b.n * b.max_degree * b.max_degree);
    radical_lower_bound(t, b.sigma, radicand)
}

pub(super) fn degree_formula_identity(t: &CorpusTree) -> Outcome {
    let formula = albertson_degree_formula(&t.tree.degree_sequence()).expect("trees in the corpus have n >= 2");
    if formula == t.bundle.irr as i64 {
        Outcome::Holds
    } else {
        Outcome::Fails(fail(tree_witness(t), formula, None, t.bundle.irr))
    }
}

pub(super) fn sigma_t_pairwise_identity(t: &CorpusTree) -> Outcome {
    let oracle = pairwise_squared_gaps(&t.tree);
    if t.bundle.sigma_t.twice() == 2 * oracle {
        Outcome::Holds
    } else {
        Outcome::Fails(fail(tree_witness(t), Scalar::from(t.bundle.sigma_t), None, oracle))
    }
}

pub(super) fn cauchy_schwarz_sandwich(t: &CorpusTree) -> Outcome {
    let b = &t.bundle;
    let square = i(b.irr) * i(b.irr);
    let (s, m) = (i(b.sigma), i(b.m));
    if s <= square && square <= m * s {
        Outcome::Holds
    } else {
        Outcome::Fails(fail(tree_witness(t), b.sigma, Some(Scalar::Int(clamp_i64(square))), clamp_i64(m * s)))
    }
}

// ------------------------------------------------------------ per sequence

pub(super) fn power_sum_inequality(ds: &DegreeSequence) -> Outcome {
    let n = ds.len();
    if n < 2 {
        return Outcome::Vacuous("sequence shorter than 2".into());
    }
    for p in [2.0f64, 3.0] {
        let left = ds.values().iter().map(|&d| (d as f64).powf(p)).sum::<f64>().powf(p.recip());
        let right = ((n - 1) as f64).powf(1.0 - p.recip()) * ds.values().iter().map(|&d| (d as f64).powf(p.recip())).sum::<f64>();
        if left > right + FLOAT_TOLERANCE * right.abs().max(1.0) {
            let mut f = fail(Witness::None, left, None, right);
            f.free_vars = vars([("p", Scalar::Real(p))]);
            return Outcome::Fails(f);
        }
    }
    Outcome::Holds
}

/// Two majorization premises `a ⪯ x`, `b ⪯ y` over sequences of one length.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MajorizationInstance {
    pub x: Vec<usize>,
    pub a: Vec<usize>,
    pub y: Vec<usize>,
    pub b: Vec<usize>,
}

pub(super) fn product_majorization(inst: &MajorizationInstance) -> Outcome {
    let seq = |v: &[usize]| DegreeSequence::new(v.to_vec());
    let (x, a, y, b) = (seq(&inst.x), seq(&inst.a), seq(&inst.y), seq(&inst.b));
    let premise = x.majorizes(&a).unwrap_or(false) && y.majorizes(&b).unwrap_or(false);
    if !premise {
        return Outcome::Vacuous("premise a ⪯ x and b ⪯ y not met".into());
    }
    let top: Vec<usize> = x.values().iter().zip(y.values()).map(|(p, q)| p * q).collect();
    let bottom: Vec<usize> = a.values().iter().zip(b.values()).map(|(p, q)| p * q).collect();
    let (top, bottom) = (DegreeSequence::new(top), DegreeSequence::new(bottom));
    if top.majorizes(&bottom).expect("equal lengths") {
        return Outcome::Holds;
    }
    // Weak (sub-)majorization drops the equal-total requirement.
    let weak = top.prefix_sums().iter().zip(bottom.prefix_sums()).all(|(t, b)| b <= *t);
    let mut f = fail(Witness::None, bottom.sum(), None, top.sum());
    f.free_vars = vars([
        ("products_majorized", Scalar::Text(bottom.to_string())),
        ("products_majorizing", Scalar::Text(top.to_string())),
        ("weakly_majorized", Scalar::Int(weak as i64)),
    ]);
    Outcome::Fails(f)
}

/// All non-increasing sequences of `len` values in `0..=max`, ascending
/// lexicographically.
fn non_increasing(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, len: usize, cap: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=cap {
            prefix.push(v);
            rec(prefix, len, v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), len, max, &mut out);
    out.sort();
    out
}

/// Robin Hood transfers: moving one unit from a larger to a strictly
/// smaller entry (keeping order after re-sorting) yields a majorized
/// sequence.
fn random_majorized<R: Rng>(x: &[usize], rng: &mut R) -> Vec<usize> {
    let mut a = x.to_vec();
    let steps = rng.random_range(0..=6);
    for _ in 0..steps {
        let i = rng.random_range(0..a.len());
        let j = rng.random_range(0..a.len());
        if a[i] >= a[j] + 2 {
            a[i] -= 1;
            a[j] += 1;
        }
        a.sort_unstable_by(|p, q| q.cmp(p));
    }
    a
}

/// Exhaustive premises over length-4 sequences with values up to 4, then
/// `random` seeded instances on random quadruples with values up to 9.
pub(super) fn majorization_instances(random: usize, seed: u64) -> Vec<MajorizationInstance> {
    let seqs = non_increasing(4, 4);
    let mut pairs = Vec::new();
    for x in &seqs {
        for a in &seqs {
            if DegreeSequence::new(x.clone()).majorizes(&DegreeSequence::new(a.clone())).unwrap() {
                pairs.push((x.clone(), a.clone()));
            }
        }
    }
    let mut out = Vec::with_capacity(pairs.len() * pairs.len() + random);
    for (x, a) in &pairs {
        for (y, b) in &pairs {
            out.push(MajorizationInstance {
                x: x.clone(),
                a: a.clone(),
                y: y.clone(),
                b: b.clone(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quad = |rng: &mut ChaCha8Rng| {
        let mut v: Vec<usize> = (0..4).map(|_| rng.random_range(0..=9)).collect();
        v.sort_unstable_by(|p, q| q.cmp(p));
        v
    };
    for _ in 0..random {
        let x = quad(&mut rng);
        let y = quad(&mut rng);
        let a = random_majorized(&x, &mut rng);
        let b = random_majorized(&y, &mut rng);
        out.push(MajorizationInstance { x, a, y, b });
    }
    out
}

// ------------------------------------------------------------- per family

/// Every spine degree list of length 2..=5 with entries 2..=5.
pub(super) fn caterpillar_spines() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 2..=5 {
        let mut spine = vec![2; k];
        loop {
            out.push(spine.clone());
            let mut idx = k;
            while idx > 0 && spine[idx - 1] == 5 {
                spine[idx - 1] = 2;
                idx -= 1;
            }
            if idx == 0 {
                break;
            }
            spine[idx - 1] += 1;
        }
    }
    out
}

pub(super) fn caterpillar_identity(spine: &[usize]) -> Outcome {
    let tree = match caterpillar(spine) {
        Ok(t) => t,
        Err(e) => return Outcome::Vacuous(format!("spine not realizable: {e}")),
    };
    let formula = caterpillar_irr_formula(spine).expect("spine length >= 2");
    let direct = albertson(&tree);
    if formula == direct as i64 {
        Outcome::Holds
    } else {
        Outcome::Fails(fail(Witness::Graph(write_graph6(&tree)), formula, None, direct))
    }
}

/// Terms `F_3..F_n` as signed integers.
fn fib_terms(n: usize, convention: FibonacciConvention) -> Vec<i128> {
    fibonacci_terms(n, convention)
        .expect("orders 4..=10 are in range")
        .into_iter()
        .map(i128::from)
        .collect()
}

/// Pieces of the printed Fibonacci-caterpillar formulas. `f[0]` is `F_3`,
/// so `F_i` is `f[i - 3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FibonacciTerms {
    /// `Σ_{i=3}^{n-1} F_i^e`
    pub head_sum: i128,
    /// `Σ_{i=5}^{n-1} (F_i - 2) |F_i - 1|^e`
    pub inner_sum: i128,
    /// `|F_4 - 1|^e`
    pub fourth: i128,
    /// `(F_n - 1) |F_n - 1|^e`
    pub last: i128,
    /// `Σ_{i=3}^{n-1} |F_i - F_{i+1}|^e`, the left side of the telescoping step.
    pub telescoping_lhs: i128,
}

impl FibonacciTerms {
    /// `e = 1` for the Albertson formula, `e = 2` for sigma.
    pub fn new(n: usize, convention: FibonacciConvention, e: u32) -> Self {
        let f = fib_terms(n, convention);
        let at = |idx: usize| f[idx - 3];
        let head_sum = (3..n).map(|k| at(k).pow(e)).sum();
        let inner_sum = (5..n).map(|k| (at(k) - 2) * (at(k) - 1).abs().pow(e)).sum();
        let telescoping_lhs = (3..n).map(|k| (at(k) - at(k + 1)).abs().pow(e)).sum();
        Self {
            head_sum,
            inner_sum,
            fourth: (at(4) - 1).abs().pow(e),
            last: (at(n) - 1) * (at(n) - 1).abs().pow(e),
            telescoping_lhs,
        }
    }

    pub fn formula(&self) -> i128 {
        self.head_sum + self.inner_sum + self.fourth + self.last + 2
    }

    /// Right side of the telescoping step: `head_sum + 2`.
    pub fn telescoping_rhs(&self) -> i128 {
        self.head_sum + 2
    }
}

fn fibonacci_identity(n: usize, convention: FibonacciConvention, e: u32) -> Outcome {
    let tree = fibonacci_caterpillar(n, convention).expect("orders 4..=10 are in range");
    let direct = if e == 1 { albertson(&tree) } else { sigma(&tree) };
    let formula = FibonacciTerms::new(n, convention, e).formula();
    if formula == i(direct) {
        Outcome::Holds
    } else {
        let mut f = fail(Witness::Graph(write_graph6(&tree)), clamp_i64(formula), None, direct);
        f.free_vars = vars([
            ("n", Scalar::Int(n as i64)),
            ("convention", Scalar::Text(convention.name().to_string())),
        ]);
        Outcome::Fails(f)
    }
}

pub(super) fn fibonacci_albertson_identity(n: usize, convention: FibonacciConvention) -> Outcome {
    fibonacci_identity(n, convention, 1)
}

pub(super) fn fibonacci_sigma_identity(n: usize, convention: FibonacciConvention) -> Outcome {
    fibonacci_identity(n, convention, 2)
}

// --------------------------------------------------------------- per order

pub(super) fn total_albertson_extrema(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let n = i(stats.n);
    if n < 4 {
        return Outcome::Vacuous("order below 4".into());
    }
    let (max, min) = ((n - 1) * (n - 2), 2 * (n - 2));
    if i(stats.irr_t_max) != max {
        let mut f = fail(class_witness(corpus, stats, stats.irr_t_max_at), stats.irr_t_max, None, clamp_i64(max));
        f.free_vars = vars([("extremum", Scalar::Text("max".into()))]);
        return Outcome::Fails(f);
    }
    if i(stats.irr_t_min) != min {
        let mut f = fail(class_witness(corpus, stats, stats.irr_t_min_at), stats.irr_t_min, None, clamp_i64(min));
        f.free_vars = vars([("extremum", Scalar::Text("min".into()))]);
        return Outcome::Fails(f);
    }
    Outcome::Holds
}

pub(super) fn star_unique_maximizer(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let n = stats.n;
    let expected = i(n - 1) * (i(n) - 2);
    let maximizer = corpus.tree_at(n, stats.irr_max_at);
    let is_star = maximizer.bundle.max_degree + 1 == n;
    if i(stats.irr_max) == expected && stats.irr_max_count == 1 && is_star {
        Outcome::Holds
    } else {
        let mut f = fail(tree_witness(maximizer), stats.irr_max, None, clamp_i64(expected));
        f.free_vars = vars([
            ("maximizer_count", Scalar::Int(stats.irr_max_count as i64)),
            ("maximizer_is_star", Scalar::Int(is_star as i64)),
        ]);
        Outcome::Fails(f)
    }
}

pub(super) fn sigma_maximum_value(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let n = i(stats.n);
    if n < 3 {
        return Outcome::Vacuous("order below 3".into());
    }
    let expected = (n - 1) * (n - 2);
    if i(stats.sigma_max) == expected {
        Outcome::Holds
    } else {
        Outcome::Fails(fail(class_witness(corpus, stats, stats.sigma_max_at), stats.sigma_max, None, clamp_i64(expected)))
    }
}

// ---------------------------------------------------------------- per cell

struct CellParams {
    n: i128,
    m: i128,
    delta: i128,
    dmin: i128,
}

fn cell_params(stats: &ClassStats) -> CellParams {
    let n = i(stats.n);
    CellParams {
        n,
        m: n - 1,
        delta: i(stats.max_degree.expect("cell stats carry a maximum degree")),
        dmin: i(stats.min_degree),
    }
}

pub(super) fn sigma_max_lower_bounds(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let witness = corpus.tree_at(stats.n, stats.sigma_max_at);
    let b = &witness.bundle;
    let (n, delta, dmin, s) = (i(b.n), i(b.max_degree), i(b.min_degree), i(b.sigma));
    let bounds = [
        ("first", dmin * (delta - dmin).pow(3) * n),
        ("second", (delta - 1).pow(3) * n),
    ];
    for (display, numerator) in bounds {
        // σ > numerator / (Δ + 1)
        if s * (delta + 1) <= numerator {
            let right = Ratio::new(numerator, delta + 1).unwrap();
            let mut f = fail(tree_witness(witness), b.sigma, None, right);
            f.free_vars = vars([("display", Scalar::Text(display.into()))]);
            return Outcome::Fails(f);
        }
    }
    Outcome::Holds
}

fn sandwich(
    corpus: &Corpus,
    stats: &ClassStats,
    low: (u64, usize),
    mid: Ratio,
    high: (u64, usize),
    strict_left: bool,
) -> Outcome {
    let left_ok = match mid.cmp_int(i(low.0)) {
        Ordering::Greater => true,
        Ordering::Equal => !strict_left,
        Ordering::Less => false,
    };
    let right_ok = mid.cmp_int(i(high.0)) != Ordering::Greater;
    if left_ok && right_ok {
        return Outcome::Holds;
    }
    let at = if left_ok { high.1 } else { low.1 };
    let mut f = fail(class_witness(corpus, stats, at), low.0, Some(mid.into()), high.0);
    f.free_vars = vars([("violated", Scalar::Text(if left_ok { "right" } else { "left" }.into()))]);
    Outcome::Fails(f)
}

pub(super) fn albertson_class_sandwich(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let CellParams { n, m, delta, dmin } = cell_params(stats);
    let num = 2 * n * dmin * (2 * (n * m).pow(3) + 2 * m * delta * delta);
    let den = 8 * n.pow(4) * delta + 8 * m.pow(3) * dmin * delta + delta * delta * (delta - 1);
    let Some(mid) = Ratio::new(num, den) else {
        return Outcome::Vacuous("zero denominator".into());
    };
    sandwich(corpus, stats, (stats.irr_min, stats.irr_min_at), mid, (stats.irr_max, stats.irr_max_at), true)
}

fn minimum_displays(stats: &ClassStats, corpus: &Corpus, minimum: u64, at: usize) -> Outcome {
    let CellParams { n, delta, dmin, .. } = cell_params(stats);
    let lower = Ratio::new((delta - 2).pow(3), n * delta - dmin);
    if let Some(lower) = lower {
        if lower.cmp_int(i(minimum)) == Ordering::Greater {
            let mut f = fail(class_witness(corpus, stats, at), minimum, None, lower);
            f.free_vars = vars([("display", Scalar::Text("lower".into()))]);
            return Outcome::Fails(f);
        }
    }
    if delta == 1 {
        return Outcome::Vacuous("Δ - 1 = 0 in the upper display".into());
    }
    let upper = Ratio::new(dmin * n * delta * delta, delta + 1)
        .unwrap()
        .add(Ratio::new(delta * delta * (delta - dmin), 6 * dmin * (delta - 1)).unwrap());
    if upper.cmp_int(i(minimum)) == Ordering::Less {
        let mut f = fail(class_witness(corpus, stats, at), minimum, None, upper);
        f.free_vars = vars([("display", Scalar::Text("upper".into()))]);
        return Outcome::Fails(f);
    }
    if lower.is_none() {
        return Outcome::Vacuous("zero denominator in the lower display".into());
    }
    Outcome::Holds
}

pub(super) fn albertson_minimum_displays(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    minimum_displays(stats, corpus, stats.irr_min, stats.irr_min_at)
}

pub(super) fn sigma_minimum_displays(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    minimum_displays(stats, corpus, stats.sigma_min, stats.sigma_min_at)
}

fn log_lower_bound(stats: &ClassStats, corpus: &Corpus, minimum: u64, at: usize, argument: u128) -> Outcome {
    let CellParams { delta, .. } = cell_params(stats);
    let bound = ceil_log2(argument) - 1 + 2 * delta - 1;
    if i(minimum) >= bound {
        Outcome::Holds
    } else {
        Outcome::Fails(fail(class_witness(corpus, stats, at), minimum, None, clamp_i64(bound)))
    }
}

pub(super) fn albertson_minimum_log_bound(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let n = stats.n as u128;
    log_lower_bound(stats, corpus, stats.irr_min, stats.irr_min_at, n + 1)
}

pub(super) fn sigma_minimum_log_bound(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let n = stats.n as u128;
    log_lower_bound(stats, corpus, stats.sigma_min, stats.sigma_min_at, n * n + 1)
}

fn extrema_coupling(stats: &ClassStats, corpus: &Corpus, rows: [(u64, i128, usize); 2]) -> Outcome {
    // Each row: (left value, right value, witness position), strict "<".
    for (idx, (left, right, at)) in rows.into_iter().enumerate() {
        if i(left) >= right {
            let mut f = fail(class_witness(corpus, stats, at), left, None, clamp_i64(right));
            f.free_vars = vars([("row", Scalar::Int(idx as i64 + 1))]);
            return Outcome::Fails(f);
        }
    }
    Outcome::Holds
}

pub(super) fn albertson_extrema_coupling(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let CellParams { n, delta, .. } = cell_params(stats);
    let (lo, hi) = (i(stats.irr_min), i(stats.irr_max));
    extrema_coupling(
        stats,
        corpus,
        [
            (stats.irr_max, delta * (lo - n), stats.irr_max_at),
            (stats.irr_min, delta * (hi - n), stats.irr_min_at),
        ],
    )
}

pub(super) fn sigma_extrema_coupling(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let CellParams { n, m, delta, .. } = cell_params(stats);
    let (lo, hi) = (i(stats.sigma_min), i(stats.sigma_max));
    // σ_max < Δ (nm - σ_min) / 4, compared as 4 σ_max < Δ (nm - σ_min).
    let rows = [
        (4 * hi, delta * (n * m - lo), stats.sigma_max_at),
        (4 * lo, delta * (n * m - hi), stats.sigma_min_at),
    ];
    for (idx, (left, right, at)) in rows.into_iter().enumerate() {
        if left >= right {
            let value = if idx == 0 { stats.sigma_max } else { stats.sigma_min };
            let mut f = fail(class_witness(corpus, stats, at), value, None, Ratio::new(right, 4).unwrap());
            f.free_vars = vars([("row", Scalar::Int(idx as i64 + 1))]);
            return Outcome::Fails(f);
        }
    }
    Outcome::Holds
}

pub(super) fn sigma_class_sandwich(stats: &ClassStats, corpus: &Corpus) -> Outcome {
    let CellParams { n, m, delta, dmin } = cell_params(stats);
    let (nf, mf, df, dminf) = (n as f64, m as f64, delta as f64, dmin as f64);
    let numerator = mf * nf * (df * df + 2.0 * df) + 2.0 * mf * dminf * df;
    let denominator = (df * df - 2.0) * (df - 1.0).powi(2) + 2.0 * nf * df * (mf * df * df).sqrt();
    if denominator <= 0.0 {
        return Outcome::Vacuous("non-positive denominator".into());
    }
    let m1_values: BTreeSet<u64> = corpus
        .trees_of_order(stats.n)
        .iter()
        .filter(|t| Some(t.bundle.max_degree) == stats.max_degree)
        .map(|t| t.bundle.m1)
        .collect();
    let mut evaluated = 0;
    for m1 in m1_values {
        let Some(ln_c) = ln_binomial(m1, 2 * stats.n as u64) else {
            continue;
        };
        evaluated += 1;
        let mid = nf * numerator / denominator * (nf + 2.0) * ln_c;
        let left_ok = stats.sigma_min as f64 <= mid;
        let right_ok = mid <= stats.sigma_max as f64;
        if !(left_ok && right_ok) {
            let at = if left_ok { stats.sigma_max_at } else { stats.sigma_min_at };
            let mut f = fail(class_witness(corpus, stats, at), stats.sigma_min, Some(Scalar::Real(mid)), stats.sigma_max);
            f.free_vars = vars([
                ("m1", Scalar::Int(m1 as i64)),
                ("violated", Scalar::Text(if left_ok { "right" } else { "left" }.into())),
            ]);
            return Outcome::Fails(f);
        }
    }
    if evaluated == 0 {
        Outcome::Vacuous("binomial C(M1, 2n) is 0 for every M1 in the class".into())
    } else {
        Outcome::Holds
    }
}

// ---------------------------------------------------------------- per pair

struct PairParams {
    n1: i128,
    n2: i128,
    m1: i128,
    d1: i128,
    d2: i128,
}

fn pair_params(t1: &CorpusTree, t2: &CorpusTree) -> PairParams {
    PairParams {
        n1: i(t1.bundle.n),
        n2: i(t2.bundle.n),
        m1: i(t1.bundle.m),
        d1: i(t1.bundle.max_degree),
        d2: i(t2.bundle.max_degree),
    }
}

fn pair_cells<'a>(t1: &CorpusTree, t2: &CorpusTree, corpus: &'a Corpus) -> (&'a ClassStats, &'a ClassStats) {
    let c1 = corpus.cell(t1.bundle.n, t1.bundle.max_degree).expect("cell of an enumerated tree");
    let c2 = corpus.cell(t2.bundle.n, t2.bundle.max_degree).expect("cell of an enumerated tree");
    (c1, c2)
}

/// Shared numerator `n1 Δ2³ + n2 Δ1⁴ + m1 Δ2²`.
fn pair_numerator(p: &PairParams) -> i128 {
    p.n1 * p.d2.pow(3) + p.n2 * p.d1.pow(4) + p.m1 * p.d2 * p.d2
}

/// The middle expression of the two-tree Albertson sandwich.
pub fn albertson_pair_middle(n1: i128, n2: i128, m1: i128, d1: i128, d2: i128) -> Option<Ratio> {
    let p = PairParams { n1, n2, m1, d1, d2 };
    Ratio::new(5 * pair_numerator(&p), d1 * (d1 + d2).pow(2))
}

fn pair_sandwich(t1: &CorpusTree, t2: &CorpusTree, low: u64, mid: Option<Ratio>, high: u64) -> Outcome {
    let Some(mid) = mid else {
        return Outcome::Vacuous("zero denominator".into());
    };
    let left_ok = mid.cmp_int(i(low)) != Ordering::Less;
    let right_ok = mid.cmp_int(i(high)) != Ordering::Greater;
    if left_ok && right_ok {
        return Outcome::Holds;
    }
    let mut f = fail(
        Witness::Pair(t1.graph6.clone(), t2.graph6.clone()),
        low,
        Some(mid.into()),
        high,
    );
    f.free_vars = vars([("violated", Scalar::Text(if left_ok { "right" } else { "left" }.into()))]);
    Outcome::Fails(f)
}

pub(super) fn albertson_pair_sandwich(t1: &CorpusTree, t2: &CorpusTree, corpus: &Corpus) -> Outcome {
    let p = pair_params(t1, t2);
    let (c1, c2) = pair_cells(t1, t2, corpus);
    let mid = albertson_pair_middle(p.n1, p.n2, p.m1, p.d1, p.d2);
    pair_sandwich(t1, t2, c1.irr_min + c2.irr_min, mid, c1.irr_max + c2.irr_max)
}

pub(super) fn sigma_pair_sandwich(t1: &CorpusTree, t2: &CorpusTree, corpus: &Corpus) -> Outcome {
    let p = pair_params(t1, t2);
    let (c1, c2) = pair_cells(t1, t2, corpus);
    let mid = Ratio::new(p.n1 * (p.d1 - 1).pow(2) * pair_numerator(&p), p.d1 * (p.d2 - 1).pow(2));
    pair_sandwich(t1, t2, c1.sigma_min + c2.sigma_min, mid, c1.sigma_max + c2.sigma_max)
}
