//! Exhaustive generation of non-isomorphic free trees, an independent
//! Prüfer-string oracle, and extremal search over tree classes.
//!
//! Generation walks canonical level sequences with the constant-amortized
//! successor of Wright, Richmond, Odlyzko and McKay built on the
//! Beyer–Hedetniemi rooted-tree successor. Each isomorphism class is
//! produced exactly once, so no dedupe set is kept.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{prufer_edges, random_tree_bounded, random_tree_with};
use crate::graph::Tree;
use crate::indices::{albertson, sigma, sigma_t, total_albertson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("tree order must be at least 1")]
    EmptyOrder,
    #[error("max degree {max_degree} exceeds n - 1 = {limit}")]
    MaxDegreeTooLarge { max_degree: usize, limit: usize },
    #[error("no tree of order {n} has maximum degree at most {max_degree}")]
    Infeasible { n: usize, max_degree: usize },
    #[error("the Prüfer oracle supports 2 <= n <= 9, got {0}")]
    OracleRange(usize),
}

/// Trees of order `n`, optionally capped in maximum degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeClassFilter {
    pub n: usize,
    pub max_degree: Option<usize>,
    /// Trees always have minimum degree 1 (for n >= 2); accepted for
    /// symmetry with `max_degree`.
    pub min_degree_ge: Option<usize>,
}

impl TreeClassFilter {
    pub fn order(n: usize) -> Self {
        Self {
            n,
            max_degree: None,
            min_degree_ge: None,
        }
    }

    pub fn with_max_degree(n: usize, max_degree: usize) -> Self {
        Self {
            n,
            max_degree: Some(max_degree),
            min_degree_ge: None,
        }
    }

    pub fn validate(&self) -> Result<(), EnumerateError> {
        if self.n == 0 {
            return Err(EnumerateError::EmptyOrder);
        }
        if let Some(max_degree) = self.max_degree {
            let limit = self.n - 1;
            if max_degree > limit {
                return Err(EnumerateError::MaxDegreeTooLarge { max_degree, limit });
            }
        }
        Ok(())
    }

    /// Whether any tree satisfies the filter.
    pub fn is_feasible(&self) -> bool {
        let n = self.n;
        let cap_ok = match self.max_degree {
            None => true,
            Some(d) => match n {
                1 => true,
                2 => d >= 1,
                _ => d >= 2,
            },
        };
        let min_ok = match self.min_degree_ge {
            None | Some(0) => true,
            Some(1) => n >= 2,
            Some(_) => false,
        };
        cap_ok && min_ok
    }

    pub fn accepts(&self, tree: &Tree) -> bool {
        tree.order() == self.n
            && self.max_degree.is_none_or(|d| tree.max_degree() <= d)
            && self.min_degree_ge.is_none_or(|d| tree.min_degree() >= d)
    }
}

/// Iterator over one representative of every free tree of a given order.
pub struct FreeTrees {
    filter: TreeClassFilter,
    state: GeneratorState,
}

enum GeneratorState {
    Single(bool),
    Layout(Option<Vec<usize>>),
}

impl FreeTrees {
    fn new(filter: TreeClassFilter) -> Self {
        let n = filter.n;
        let state = if n == 1 {
            GeneratorState::Single(true)
        } else {
            // The path rooted at its center.
            let layout: Vec<usize> = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
            GeneratorState::Layout(Some(layout))
        };
        Self { filter, state }
    }

    fn next_unfiltered(&mut self) -> Option<Tree> {
        match &mut self.state {
            GeneratorState::Single(pending) => {
                if std::mem::take(pending) {
                    Some(Tree::new(1, &[]).expect("single vertex"))
                } else {
                    None
                }
            }
            GeneratorState::Layout(slot) => {
                let layout = next_free_tree(slot.take()?);
                let tree = layout_to_tree(&layout);
                *slot = next_rooted_tree(&layout, None);
                Some(tree)
            }
        }
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        loop {
            let tree = self.next_unfiltered()?;
            if self.filter.accepts(&tree) {
                return Some(tree);
            }
        }
    }
}

/// Streams one tree per isomorphism class satisfying `filter`, in
/// generation order (reverse lexicographic on canonical level sequences).
pub fn free_trees(filter: TreeClassFilter) -> Result<FreeTrees, EnumerateError> {
    filter.validate()?;
    Ok(FreeTrees::new(filter))
}

/// Beyer–Hedetniemi successor of a rooted level sequence. `p` overrides
/// the position to increment.
fn next_rooted_tree(predecessor: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = predecessor.len() - 1;
            while predecessor[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while predecessor[q] != predecessor[p] - 1 {
        q -= 1;
    }
    let mut result = predecessor.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// Splits a level sequence into the root's first subtree (levels shifted
/// up by one) and the remaining tree.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let split = layout
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(_, &level)| level == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..split].iter().map(|&l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[split..].iter().copied()).collect();
    (left, rest)
}

/// Returns `candidate` if it is the canonical level sequence of a free
/// tree, otherwise jumps to the next canonical one.
fn next_free_tree(mut candidate: Vec<usize>) -> Vec<usize> {
    let (left, rest) = split_tree(&candidate);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height {
        if left.len() > rest.len() || (left.len() == rest.len() && left > rest) {
            valid = false;
        }
    }
    if valid {
        return candidate;
    }
    let p = left.len();
    let needs_suffix = candidate[p] > 2;
    candidate = next_rooted_tree(&candidate, Some(p)).expect("jump target exists for invalid candidates");
    if needs_suffix {
        let (new_left, _) = split_tree(&candidate);
        let new_left_height = new_left.iter().copied().max().unwrap_or(0);
        let len = candidate.len();
        let suffix_len = new_left_height + 1;
        for (offset, level) in (1..=suffix_len).enumerate() {
            candidate[len - suffix_len + offset] = level;
        }
    }
    candidate
}

/// Vertex `i` is the `i`-th vertex in preorder; its parent is the latest
/// earlier vertex one level up.
fn layout_to_tree(layout: &[usize]) -> Tree {
    let mut last_at_level: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    for (v, &level) in layout.iter().enumerate() {
        if level > 0 {
            edges.push((last_at_level[level - 1], v));
        }
        last_at_level.truncate(level);
        last_at_level.push(v);
    }
    Tree::new(layout.len(), &edges).expect("level sequence encodes a tree")
}

/// Result of exhausting all `n^(n-2)` labeled trees and grouping them by
/// isomorphism class.
pub struct OracleClasses {
    pub labeled_trees: u64,
    /// One labeled representative per class, sorted by canonical code.
    pub representatives: Vec<Tree>,
}

impl OracleClasses {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

/// Decodes every Prüfer string of order `n`, dedupes by canonical code.
///
/// Independent of [`free_trees`]; used to check its counts.
pub fn labeled_trees_oracle(n: usize) -> Result<OracleClasses, EnumerateError> {
    if !(2..=9).contains(&n) {
        return Err(EnumerateError::OracleRange(n));
    }
    if n == 2 {
        return Ok(OracleClasses {
            labeled_trees: 1,
            representatives: vec![Tree::new(2, &[(0, 1)]).expect("K2")],
        });
    }
    let len = n - 2;
    let total = (n as u64).pow(len as u32);
    // Shard on the first symbol; every shard dedupes locally.
    let shards: Vec<BTreeMap<Vec<u8>, Tree>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut classes: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
            let mut seen: HashSet<Vec<u8>> = HashSet::new();
            let mut seq = vec![0usize; len];
            seq[0] = first;
            let inner = total / n as u64;
            for code in 0..inner {
                let mut c = code;
                for slot in seq[1..].iter_mut() {
                    *slot = (c % n as u64) as usize;
                    c /= n as u64;
                }
                let tree = Tree::new(n, &prufer_edges(n, &seq)).expect("Prüfer decoding yields a tree");
                let key = tree.canonical_code();
                if !seen.contains(&key) {
                    seen.insert(key.clone());
                    classes.insert(key, tree);
                }
            }
            classes
        })
        .collect();
    let mut merged: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
    for shard in shards {
        for (key, tree) in shard {
            merged.entry(key).or_insert(tree);
        }
    }
    Ok(OracleClasses {
        labeled_trees: total,
        representatives: merged.into_values().collect(),
    })
}

/// Tree index optimized by [`extremal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexName {
    Irr,
    Sigma,
    IrrT,
    SigmaT,
}

impl IndexName {
    /// Integral value of the index on `tree`. `sigma_t` over unordered pairs
    /// is always an integer.
    pub fn evaluate(self, tree: &Tree) -> u64 {
        match self {
            IndexName::Irr => albertson(tree),
            IndexName::Sigma => sigma(tree),
            IndexName::IrrT => total_albertson(tree),
            IndexName::SigmaT => sigma_t(tree)
                .to_integer()
                .expect("sigma_t is a sum over unordered pairs"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexName::Irr => "irr",
            IndexName::Sigma => "sigma",
            IndexName::IrrT => "irr_t",
            IndexName::SigmaT => "sigma_t",
        }
    }
}

impl fmt::Display for IndexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "irr" => Ok(IndexName::Irr),
            "sigma" => Ok(IndexName::Sigma),
            "irr_t" => Ok(IndexName::IrrT),
            "sigma_t" => Ok(IndexName::SigmaT),
            other => Err(format!("unknown index {other:?} (expected irr|sigma|irr_t|sigma_t)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Min,
    Max,
}

impl Objective {
    /// True if `candidate` is strictly better than `incumbent`.
    pub fn improves(self, candidate: u64, incumbent: u64) -> bool {
        match self {
            Objective::Min => candidate < incumbent,
            Objective::Max => candidate > incumbent,
        }
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(Objective::Min),
            "max" => Ok(Objective::Max),
            other => Err(format!("unknown objective {other:?} (expected min|max)")),
        }
    }
}

/// Search knobs for [`extremal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Orders up to this value are searched exhaustively.
    pub exhaustive_limit: usize,
    pub restarts: usize,
    /// Moves per restart; `None` means `10 n^2`.
    pub moves_per_restart: Option<usize>,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            exhaustive_limit: 14,
            restarts: 32,
            moves_per_restart: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalResult {
    pub witness: Tree,
    pub value: u64,
    pub objective: Objective,
    pub index_name: IndexName,
    /// True when `value` is the exact optimum over the class.
    pub exhaustive: bool,
    /// Number of isomorphism classes attaining `value` (exhaustive runs only).
    pub optimum_count: Option<usize>,
}

/// Optimum of `index` over the trees in `filter`.
pub fn extremal(
    filter: TreeClassFilter,
    index: IndexName,
    objective: Objective,
    config: &SearchConfig,
) -> Result<ExtremalResult, EnumerateError> {
    filter.validate()?;
    if !filter.is_feasible() {
        return Err(EnumerateError::Infeasible {
            n: filter.n,
            max_degree: filter.max_degree.unwrap_or(0),
        });
    }
    if filter.n <= config.exhaustive_limit {
        Ok(exhaustive_extremal(filter, index, objective))
    } else {
        Ok(hill_climb(filter, index, objective, config))
    }
}

fn exhaustive_extremal(filter: TreeClassFilter, index: IndexName, objective: Objective) -> ExtremalResult {
    let mut best: Option<(u64, Tree)> = None;
    let mut count = 0;
    for tree in FreeTrees::new(filter) {
        let value = index.evaluate(&tree);
        match &best {
            Some((incumbent, _)) if value == *incumbent => count += 1,
            Some((incumbent, _)) if !objective.improves(value, *incumbent) => {}
            _ => {
                best = Some((value, tree));
                count = 1;
            }
        }
    }
    let (value, witness) = best.expect("feasible filter yields at least one tree");
    ExtremalResult {
        witness,
        value,
        objective,
        index_name: index,
        exhaustive: true,
        optimum_count: Some(count),
    }
}

/// Restarted local search over leaf relocations: detach a leaf and hang it
/// from another vertex that stays within the degree cap. Non-worsening
/// moves are accepted so plateaus can be crossed.
fn hill_climb(filter: TreeClassFilter, index: IndexName, objective: Objective, config: &SearchConfig) -> ExtremalResult {
    let n = filter.n;
    let cap = filter.max_degree.unwrap_or(n - 1);
    let moves = config.moves_per_restart.unwrap_or(10 * n * n);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best: Option<(u64, Tree)> = None;

    for _ in 0..config.restarts.max(1) {
        let start = if filter.max_degree.is_some() {
            random_tree_bounded(n, cap, &mut rng).expect("feasibility checked")
        } else {
            random_tree_with(n, &mut rng).expect("n >= 1")
        };
        let mut edges: Vec<(usize, usize)> = start.edges().to_vec();
        let mut current = start;
        let mut current_value = index.evaluate(&current);

        for _ in 0..moves {
            if n < 3 {
                break;
            }
            let leaves: Vec<usize> = current.leaves().collect();
            let leaf = leaves[rng.random_range(0..leaves.len())];
            let anchor = current.neighbors(leaf)[0];
            let target = rng.random_range(0..n);
            if target == leaf || target == anchor || current.degree(target) >= cap {
                continue;
            }
            let slot = edges
                .iter()
                .position(|&(u, v)| (u == leaf && v == anchor) || (u == anchor && v == leaf))
                .expect("leaf edge present");
            edges[slot] = (leaf, target);
            let candidate = Tree::new(n, &edges).expect("leaf relocation preserves tree-ness");
            let value = index.evaluate(&candidate);
            if !objective.improves(current_value, value) {
                current = candidate;
                current_value = value;
            } else {
                edges[slot] = (leaf, anchor);
            }
        }
        if best
            .as_ref()
            .is_none_or(|(incumbent, _)| objective.improves(current_value, *incumbent))
        {
            best = Some((current_value, current));
        }
    }
    let (value, witness) = best.expect("at least one restart");
    ExtremalResult {
        witness,
        value,
        objective,
        index_name: index,
        exhaustive: false,
        optimum_count: None,
    }
}
