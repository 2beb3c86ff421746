//! A registry of published bounds and identities on tree irregularity
//! indices, and an engine that evaluates each one over every tree of a
//! range of orders.
//!
//! Nothing here assumes a claim is true: every verdict is a count of
//! holding, failing and vacuous instances, with the first failures kept
//! as re-checkable witnesses.

mod checks;
pub mod context;
mod registry;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use checks::{ceil_log2, ln_binomial, FibonacciTerms, MajorizationInstance, Ratio, FLOAT_TOLERANCE};
pub use context::{ClassStats, Corpus, CorpusTree};
pub use registry::registry;

use crate::degseq::{DegreeSequence, FibonacciConvention};
use crate::format::{parse_graph6, FormatError};
use crate::graph::{GraphError, Tree};
use crate::indices::HalfInteger;

/// Largest order the engine will enumerate.
pub const MAX_ORDER: usize = 14;

/// At most this many counterexamples are retained per claim.
pub const RETAINED_COUNTEREXAMPLES: usize = 12;

#[derive(Debug, Error)]
pub enum ClaimsError {
    #[error("invalid order range {n_min}..={n_max} (need 2 <= n_min <= n_max <= {limit})")]
    InvalidRange { n_min: usize, n_max: usize, limit: usize },
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("claim {claim} does not take a {instance} instance")]
    InstanceMismatch { claim: String, instance: &'static str },
    #[error("witness graph is not a tree: {0}")]
    Graph(#[from] GraphError),
    #[error("witness is not valid graph6: {0}")]
    Format(#[from] FormatError),
}

/// A number or label in a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Int(v)
    }
}

impl From<u64> for Scalar {
    fn from(v: u64) -> Self {
        Scalar::Int(i64::try_from(v).unwrap_or(i64::MAX))
    }
}

impl From<usize> for Scalar {
    fn from(v: usize) -> Self {
        Scalar::from(v as u64)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Real(v)
    }
}

impl From<HalfInteger> for Scalar {
    fn from(v: HalfInteger) -> Self {
        match v.to_integer() {
            Some(x) => Scalar::from(x),
            None => Scalar::Real(v.to_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Real(v) => write!(f, "{v}"),
            Scalar::Text(v) => f.write_str(v),
        }
    }
}

/// Evaluated sides of a failing comparison. Identities put the printed
/// formula on the left and the direct computation on the right.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Values {
    pub left: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle: Option<Scalar>,
    pub right: Scalar,
}

/// The graph(s) a failure is about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    Graph(String),
    Pair(String, String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub witness: Witness,
    pub values: Values,
    pub free_vars: BTreeMap<String, Scalar>,
}

/// Result of evaluating a claim on one instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Holds,
    Fails(Failure),
    /// The claim's hypotheses or bound expressions are undefined here.
    Vacuous(String),
}

impl Outcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::Fails(_))
    }
}

/// One element of a claim's domain, enough to re-run the check from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Tree { graph6: String },
    Order { n: usize },
    Cell { n: usize, max_degree: usize },
    Pair { first: String, second: String },
    Caterpillar { spine: Vec<usize> },
    Fibonacci { n: usize, convention: FibonacciConvention },
    Sequence { degrees: Vec<usize> },
    SequencePair(MajorizationInstance),
}

impl Instance {
    fn kind(&self) -> &'static str {
        match self {
            Instance::Tree { .. } => "tree",
            Instance::Order { .. } => "order",
            Instance::Cell { .. } => "cell",
            Instance::Pair { .. } => "pair",
            Instance::Caterpillar { .. } => "caterpillar",
            Instance::Fibonacci { .. } => "fibonacci",
            Instance::Sequence { .. } => "sequence",
            Instance::SequencePair(_) => "sequence pair",
        }
    }
}

/// What a claim quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    PerTree,
    /// All trees of order `n`.
    PerOrder,
    /// All trees with order `n` and maximum degree `Δ`.
    PerClass,
    PerPair,
    PerFamilyCaterpillar,
    PerFamilyFibonacci,
    PerSequence,
    PerSequencePair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    Strict,
    NonStrict,
    /// Strict on one side of a sandwich, non-strict on the other.
    Mixed,
    Identity,
}

/// The evaluable predicate of a claim, by domain.
#[derive(Clone, Copy)]
pub(crate) enum Check {
    Tree(fn(&CorpusTree) -> Outcome),
    Order(fn(&ClassStats, &Corpus) -> Outcome),
    Cell(fn(&ClassStats, &Corpus) -> Outcome),
    Pair(fn(&CorpusTree, &CorpusTree, &Corpus) -> Outcome),
    Caterpillar(fn(&[usize]) -> Outcome),
    Fibonacci(fn(usize, FibonacciConvention) -> Outcome),
    Sequence(fn(&DegreeSequence) -> Outcome),
    SequencePair(fn(&MajorizationInstance) -> Outcome),
}

impl Check {
    fn domain(self) -> Domain {
        match self {
            Check::Tree(_) => Domain::PerTree,
            Check::Order(_) => Domain::PerOrder,
            Check::Cell(_) => Domain::PerClass,
            Check::Pair(_) => Domain::PerPair,
            Check::Caterpillar(_) => Domain::PerFamilyCaterpillar,
            Check::Fibonacci(_) => Domain::PerFamilyFibonacci,
            Check::Sequence(_) => Domain::PerSequence,
            Check::SequencePair(_) => Domain::PerSequencePair,
        }
    }
}

/// A checkable statement.
#[derive(Clone)]
pub struct Claim {
    pub id: &'static str,
    /// Plain-language statement.
    pub statement: &'static str,
    /// Kind of result the statement is taken from.
    pub paper_ref: &'static str,
    /// The statement's formula as printed, in plain-text math.
    pub quote: &'static str,
    pub strictness: Strictness,
    /// How quantified variables (p, α, λ, ...) are instantiated.
    pub free_vars: &'static str,
    /// Interpretation notes copied into every verdict.
    pub notes: &'static [&'static str],
    pub(crate) check: Check,
    pub(crate) records: Option<fn() -> Vec<ReferenceRecord>>,
}

impl Claim {
    pub fn domain(&self) -> Domain {
        self.check.domain()
    }
}

impl fmt::Debug for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Claim")
            .field("id", &self.id)
            .field("domain", &self.domain())
            .field("strictness", &self.strictness)
            .finish_non_exhaustive()
    }
}

/// Looks a claim up by id, case-insensitively.
pub fn find_claim(id: &str) -> Result<Claim, ClaimsError> {
    registry()
        .into_iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| ClaimsError::UnknownClaim(id.to_string()))
}

/// A reported number set beside the value this crate computes for it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRecord {
    pub label: String,
    pub computed_value: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reported_value: Option<Scalar>,
    #[serde(rename = "match", default, skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: Instance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_g6: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_pair_g6: Option<[String; 2]>,
    pub values: Values,
    pub free_vars: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub id: String,
    pub statement: String,
    pub paper_ref: String,
    pub quote: String,
    pub domain: Domain,
    pub strictness: Strictness,
    pub free_var_policy: String,
    pub domain_size: u64,
    pub holds: u64,
    pub fails: u64,
    pub vacuous: u64,
    pub first_counterexample: Option<Counterexample>,
    /// The first few failures in stream order, starting with the first.
    pub counterexamples: Vec<Counterexample>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<ReferenceRecord>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub version: String,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub claims: Vec<ClaimVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl EvaluationReport {
    /// The report with its timing removed; this part is deterministic.
    pub fn body(&self) -> EvaluationReport {
        EvaluationReport {
            wall_time_seconds: None,
            ..self.clone()
        }
    }

    pub fn verdict(&self, id: &str) -> Option<&ClaimVerdict> {
        self.claims.iter().find(|v| v.id.eq_ignore_ascii_case(id))
    }
}

/// Range and randomness of a claim run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvaluationConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Seeded random instances added to the exhaustive sequence-pair domain.
    pub random_sequence_pairs: usize,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        Self {
            n_min: 4,
            n_max: 9,
            seed: 0,
            random_sequence_pairs: 10_000,
        }
    }
}

impl EvaluationConfig {
    pub fn new(n_min: usize, n_max: usize, seed: u64) -> Self {
        Self {
            n_min,
            n_max,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ClaimsError> {
        if self.n_min < 2 || self.n_min > self.n_max || self.n_max > MAX_ORDER {
            return Err(ClaimsError::InvalidRange {
                n_min: self.n_min,
                n_max: self.n_max,
                limit: MAX_ORDER,
            });
        }
        Ok(())
    }
}

/// Accumulates outcomes in stream order.
#[derive(Default)]
struct Tally {
    domain_size: u64,
    holds: u64,
    fails: u64,
    vacuous: u64,
    counterexamples: Vec<Counterexample>,
    vacuous_reasons: BTreeMap<String, u64>,
}

impl Tally {
    fn push(&mut self, instance: impl FnOnce() -> Instance, outcome: Outcome) {
        self.domain_size += 1;
        match outcome {
            Outcome::Holds => self.holds += 1,
            Outcome::Vacuous(reason) => {
                self.vacuous += 1;
                *self.vacuous_reasons.entry(reason).or_default() += 1;
            }
            Outcome::Fails(failure) => {
                self.fails += 1;
                if self.counterexamples.len() < RETAINED_COUNTEREXAMPLES {
                    let (witness_g6, witness_pair_g6) = match failure.witness {
                        Witness::None => (None, None),
                        Witness::Graph(g) => (Some(g), None),
                        Witness::Pair(a, b) => (None, Some([a, b])),
                    };
                    self.counterexamples.push(Counterexample {
                        instance: instance(),
                        witness_g6,
                        witness_pair_g6,
                        values: failure.values,
                        free_vars: failure.free_vars,
                    });
                }
            }
        }
    }

    fn into_verdict(self, claim: &Claim) -> ClaimVerdict {
        let mut notes: Vec<String> = claim.notes.iter().map(|s| s.to_string()).collect();
        for (reason, count) in &self.vacuous_reasons {
            notes.push(format!("vacuous on {count} instance(s): {reason}"));
        }
        ClaimVerdict {
            id: claim.id.to_string(),
            statement: claim.statement.to_string(),
            paper_ref: claim.paper_ref.to_string(),
            quote: claim.quote.to_string(),
            domain: claim.domain(),
            strictness: claim.strictness,
            free_var_policy: claim.free_vars.to_string(),
            domain_size: self.domain_size,
            holds: self.holds,
            fails: self.fails,
            vacuous: self.vacuous,
            first_counterexample: self.counterexamples.first().cloned(),
            counterexamples: self.counterexamples,
            records: claim.records.map(|f| f()).unwrap_or_default(),
            notes,
        }
    }
}

/// The enumerated corpus for a configuration, shared by every claim.
pub struct EvaluationContext {
    config: EvaluationConfig,
    corpus: Corpus,
}

impl EvaluationContext {
    /// Enumerates orders `n_min - 1 ..= n_max`; the extra smaller order
    /// supplies the second tree of pair claims.
    pub fn build(config: EvaluationConfig) -> Result<Self, ClaimsError> {
        config.validate()?;
        let low = config.n_min.saturating_sub(1).max(1);
        Ok(Self {
            config,
            corpus: Corpus::build(low..=config.n_max),
        })
    }

    pub fn config(&self) -> &EvaluationConfig {
        &self.config
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    fn range(&self) -> std::ops::RangeInclusive<usize> {
        self.config.n_min..=self.config.n_max
    }

    fn trees(&self) -> Vec<&CorpusTree> {
        self.range().flat_map(|n| self.corpus.trees_of_order(n)).collect()
    }

    /// Evaluates one claim over its whole domain. Instances are checked in
    /// parallel and tallied in stream order.
    pub fn evaluate(&self, claim: &Claim) -> ClaimVerdict {
        let mut tally = Tally::default();
        match claim.check {
            Check::Tree(f) => {
                let trees = self.trees();
                let outcomes: Vec<Outcome> = trees.par_iter().map(|t| f(t)).collect();
                for (t, o) in trees.iter().zip(outcomes) {
                    tally.push(|| Instance::Tree { graph6: t.graph6.clone() }, o);
                }
            }
            Check::Order(f) => {
                for n in self.range() {
                    let stats = self.corpus.order_stats(n).expect("every order has trees");
                    tally.push(|| Instance::Order { n }, f(stats, &self.corpus));
                }
            }
            Check::Cell(f) => {
                let cells: Vec<&ClassStats> = self
                    .corpus
                    .cells
                    .values()
                    .filter(|s| self.range().contains(&s.n))
                    .collect();
                let outcomes: Vec<Outcome> = cells.par_iter().map(|s| f(s, &self.corpus)).collect();
                for (s, o) in cells.iter().zip(outcomes) {
                    let instance = || Instance::Cell {
                        n: s.n,
                        max_degree: s.max_degree.expect("cell"),
                    };
                    tally.push(instance, o);
                }
            }
            Check::Pair(f) => {
                for n1 in self.range() {
                    let firsts = self.corpus.trees_of_order(n1);
                    let seconds = self.corpus.trees_of_order(n1 - 1);
                    let outcomes: Vec<Vec<(usize, Outcome)>> = firsts
                        .par_iter()
                        .map(|t1| {
                            seconds
                                .iter()
                                .enumerate()
                                .filter(|(_, t2)| t2.bundle.max_degree == t1.bundle.max_degree + 1)
                                .map(|(j, t2)| (j, f(t1, t2, &self.corpus)))
                                .collect()
                        })
                        .collect();
                    for (t1, row) in firsts.iter().zip(outcomes) {
                        for (j, o) in row {
                            let instance = || Instance::Pair {
                                first: t1.graph6.clone(),
                                second: seconds[j].graph6.clone(),
                            };
                            tally.push(instance, o);
                        }
                    }
                }
            }
            Check::Caterpillar(f) => {
                for spine in checks::caterpillar_spines() {
                    let o = f(&spine);
                    tally.push(|| Instance::Caterpillar { spine }, o);
                }
            }
            Check::Fibonacci(f) => {
                for convention in FibonacciConvention::ALL {
                    for n in 4..=10 {
                        tally.push(|| Instance::Fibonacci { n, convention }, f(n, convention));
                    }
                }
            }
            Check::Sequence(f) => {
                let mut seen = std::collections::BTreeSet::new();
                for t in self.trees() {
                    let ds = t.tree.degree_sequence();
                    if seen.insert(ds.clone()) {
                        let o = f(&ds);
                        tally.push(|| Instance::Sequence { degrees: ds.values().to_vec() }, o);
                    }
                }
            }
            Check::SequencePair(f) => {
                let instances = checks::majorization_instances(self.config.random_sequence_pairs, self.config.seed);
                let outcomes: Vec<Outcome> = instances.par_iter().map(f).collect();
                for (inst, o) in instances.into_iter().zip(outcomes) {
                    tally.push(|| Instance::SequencePair(inst), o);
                }
            }
        }
        tally.into_verdict(claim)
    }

    /// Every registered claim, in registry order.
    pub fn evaluate_claims(&self, claims: &[Claim]) -> EvaluationReport {
        let start = Instant::now();
        let verdicts: Vec<ClaimVerdict> = claims.par_iter().map(|c| self.evaluate(c)).collect();
        EvaluationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            n_min: self.config.n_min,
            n_max: self.config.n_max,
            seed: self.config.seed,
            claims: verdicts,
            wall_time_seconds: Some(start.elapsed().as_secs_f64()),
        }
    }
}

/// Builds a context for `config` and evaluates a single claim.
pub fn evaluate_claim(claim: &Claim, config: EvaluationConfig) -> Result<ClaimVerdict, ClaimsError> {
    Ok(EvaluationContext::build(config)?.evaluate(claim))
}

/// Evaluates all registered claims.
pub fn evaluate_all(config: EvaluationConfig) -> Result<EvaluationReport, ClaimsError> {
    let ctx = EvaluationContext::build(config)?;
    Ok(ctx.evaluate_claims(&registry()))
}

fn parse_tree(graph6: &str) -> Result<CorpusTree, ClaimsError> {
    let g = parse_graph6(graph6)?;
    Ok(CorpusTree::new(Tree::try_from(g)?))
}

/// Re-evaluates `claim` on one instance from scratch: trees are parsed
/// from their graph6 text and class extrema are re-enumerated, sharing
/// nothing with the run that produced the instance.
pub fn recheck(claim: &Claim, instance: &Instance) -> Result<Outcome, ClaimsError> {
    let mismatch = || ClaimsError::InstanceMismatch {
        claim: claim.id.to_string(),
        instance: instance.kind(),
    };
    let outcome = match (claim.check, instance) {
        (Check::Tree(f), Instance::Tree { graph6 }) => f(&parse_tree(graph6)?),
        (Check::Order(f), Instance::Order { n }) => {
            let corpus = Corpus::build([*n]);
            f(corpus.order_stats(*n).ok_or_else(mismatch)?, &corpus)
        }
        (Check::Cell(f), Instance::Cell { n, max_degree }) => {
            let corpus = Corpus::build([*n]);
            f(corpus.cell(*n, *max_degree).ok_or_else(mismatch)?, &corpus)
        }
        (Check::Pair(f), Instance::Pair { first, second }) => {
            let (t1, t2) = (parse_tree(first)?, parse_tree(second)?);
            let corpus = Corpus::build([t2.bundle.n, t1.bundle.n]);
            f(&t1, &t2, &corpus)
        }
        (Check::Caterpillar(f), Instance::Caterpillar { spine }) => f(spine),
        (Check::Fibonacci(f), Instance::Fibonacci { n, convention }) => f(*n, *convention),
        (Check::Sequence(f), Instance::Sequence { degrees }) => f(&DegreeSequence::new(degrees.clone())),
        (Check::SequencePair(f), Instance::SequencePair(inst)) => f(inst),
        _ => return Err(mismatch()),
    };
    Ok(outcome)
}

/// Comma-separated claim ids, e.g. `"C1,c9, C31"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimSelection(pub Vec<String>);

impl FromStr for ClaimSelection {
    type Err = ClaimsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ids = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| find_claim(t).map(|c| c.id.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self(ids))
    }
}

impl ClaimSelection {
    /// The selected claims in registry order.
    pub fn claims(&self) -> Vec<Claim> {
        registry().into_iter().filter(|c| self.0.iter().any(|id| id == c.id)).collect()
    }
}
