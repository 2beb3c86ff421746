//! Degree sequences: graphicality, realization, majorization and the
//! Fibonacci sequences used by the caterpillar constructions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Tree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegSeqError {
    #[error("degree sum {0} is odd")]
    OddSum(usize),
    #[error("sequence {0} is not graphical")]
    NotGraphical(DegreeSequence),
    #[error("sequence {0} is not the degree sequence of a tree")]
    NotTreeRealizable(DegreeSequence),
    #[error("sequences have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("Fibonacci degree sequences need n >= 4, got {0}")]
    FibonacciOrder(usize),
    #[error("Fibonacci number F_{0} does not fit in 64 bits")]
    FibonacciOverflow(usize),
    #[error("cannot parse degree {0:?}")]
    Parse(String),
}

/// Vertex degrees stored in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    /// Sorts `values` non-increasing.
    pub fn new(mut values: Vec<usize>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        Self(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// `prefix_sums()[k]` is the sum of the first `k` entries.
    pub fn prefix_sums(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(0);
        let mut acc = 0;
        for &d in &self.0 {
            acc += d;
            out.push(acc);
        }
        out
    }

    /// Repeatedly removes the largest entry `d` and decrements the next `d`
    /// entries, re-sorting after every step. The sequence is graphical iff
    /// this ends in all zeros without a negative entry.
    pub fn is_graphical(&self) -> bool {
        if self.sum() % 2 == 1 {
            return false;
        }
        let mut work: Vec<i64> = self.0.iter().map(|&d| d as i64).collect();
        loop {
            work.sort_unstable_by(|a, b| b.cmp(a));
            let Some(&first) = work.first() else {
                return true;
            };
            if first == 0 {
                return true;
            }
            let first = first as usize;
            if first > work.len() - 1 {
                return false;
            }
            work.remove(0);
            for d in &mut work[..first] {
                *d -= 1;
                if *d < 0 {
                    return false;
                }
            }
        }
    }

    /// Builds a simple graph whose vertex `i` has degree `values()[i]`.
    pub fn realize_graph(&self) -> Result<Graph, DegSeqError> {
        let sum = self.sum();
        if sum % 2 == 1 {
            return Err(DegSeqError::OddSum(sum));
        }
        if !self.is_graphical() {
            return Err(DegSeqError::NotGraphical(self.clone()));
        }
        let n = self.len();
        let mut residual: Vec<(usize, usize)> = self.0.iter().copied().zip(0..n).collect();
        let mut edges = Vec::with_capacity(sum / 2);
        loop {
            // Largest residual first; ties broken by vertex id for determinism.
            residual.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let (d, v) = residual[0];
            if d == 0 {
                break;
            }
            residual[0].0 = 0;
            for slot in residual.iter_mut().skip(1).take(d) {
                // is_graphical guarantees enough positive residuals remain.
                debug_assert!(slot.0 > 0);
                slot.0 -= 1;
                edges.push((v, slot.1));
            }
        }
        Ok(Graph::new(n, &edges).expect("Havel-Hakimi never repeats an edge"))
    }

    /// True iff some tree has exactly this degree multiset.
    pub fn is_tree_realizable(&self) -> bool {
        match self.len() {
            0 => false,
            1 => self.0[0] == 0,
            n => self.0.iter().all(|&d| d >= 1) && self.sum() == 2 * (n - 1),
        }
    }

    /// Realizes the sequence as a caterpillar: every entry of at least 2 goes
    /// on a spine in the stored order, then leaves fill the residual degree.
    pub fn realize_tree(&self) -> Result<Tree, DegSeqError> {
        if !self.is_tree_realizable() {
            return Err(DegSeqError::NotTreeRealizable(self.clone()));
        }
        let n = self.len();
        if n == 1 {
            return Ok(Tree::new(1, &[]).expect("single vertex"));
        }
        let spine: Vec<usize> = self.0.iter().copied().filter(|&d| d >= 2).collect();
        if spine.is_empty() {
            return Ok(Tree::new(2, &[(0, 1)]).expect("K2"));
        }
        let k = spine.len();
        let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        let mut next_leaf = k;
        for (i, &d) in spine.iter().enumerate() {
            let spine_neighbors = usize::from(i > 0) + usize::from(i + 1 < k);
            for _ in spine_neighbors..d {
                edges.push((i, next_leaf));
                next_leaf += 1;
            }
        }
        debug_assert_eq!(next_leaf, n);
        Ok(Tree::new(n, &edges).expect("degree-feasible caterpillar is a tree"))
    }

    /// True iff `other ⪯ self`: every prefix sum of `other` is at most the
    /// matching prefix sum of `self`, and the totals are equal.
    pub fn majorizes(&self, other: &DegreeSequence) -> Result<bool, DegSeqError> {
        if self.len() != other.len() {
            return Err(DegSeqError::LengthMismatch(self.len(), other.len()));
        }
        let a = self.prefix_sums();
        let b = other.prefix_sums();
        Ok(a.last() == b.last() && a.iter().zip(&b).all(|(x, y)| y <= x))
    }
}

impl From<Vec<usize>> for DegreeSequence {
    fn from(values: Vec<usize>) -> Self {
        Self::new(values)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Comma-separated degrees in any order, e.g. `"1,3,1,1"`.
impl FromStr for DegreeSequence {
    type Err = DegSeqError;

    /// Accepts `3,2,1` as well as the displayed form `(3,2,1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        let values = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| DegSeqError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(values))
    }
}

/// Which seed pair starts the Fibonacci numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FibonacciConvention {
    /// `F_1 = 1, F_2 = 2`, so `F_3 = 3, F_4 = 5, ...`.
    Paper,
    /// `F_1 = F_2 = 1`, so `F_3 = 2, F_4 = 3, ...`.
    Standard,
}

impl FibonacciConvention {
    pub const ALL: [FibonacciConvention; 2] = [FibonacciConvention::Paper, FibonacciConvention::Standard];

    pub fn name(self) -> &'static str {
        match self {
            FibonacciConvention::Paper => "paper",
            FibonacciConvention::Standard => "standard",
        }
    }
}

impl fmt::Display for FibonacciConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FibonacciConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(FibonacciConvention::Paper),
            "standard" => Ok(FibonacciConvention::Standard),
            other => Err(format!("unknown Fibonacci convention {other:?} (expected paper|standard)")),
        }
    }
}

/// `F_i` for `i >= 1` under the given convention.
pub fn fibonacci(i: usize, convention: FibonacciConvention) -> Result<u64, DegSeqError> {
    assert!(i >= 1, "Fibonacci numbers are 1-indexed");
    let (mut a, mut b) = match convention {
        FibonacciConvention::Paper => (1u64, 2u64),
        FibonacciConvention::Standard => (1, 1),
    };
    for _ in 1..i {
        let next = a.checked_add(b).ok_or(DegSeqError::FibonacciOverflow(i))?;
        a = b;
        b = next;
    }
    Ok(a)
}

/// `F_3, ..., F_n` in index order (non-decreasing).
pub fn fibonacci_terms(n: usize, convention: FibonacciConvention) -> Result<Vec<u64>, DegSeqError> {
    if n < 4 {
        return Err(DegSeqError::FibonacciOrder(n));
    }
    (3..=n).map(|i| fibonacci(i, convention)).collect()
}

/// The degree sequence `(F_3, ..., F_n)`, stored non-increasing.
pub fn fibonacci_degrees(n: usize, convention: FibonacciConvention) -> Result<DegreeSequence, DegSeqError> {
    let terms = fibonacci_terms(n, convention)?;
    Ok(DegreeSequence::new(terms.into_iter().map(|f| f as usize).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(values: &[usize]) -> DegreeSequence {
        DegreeSequence::new(values.to_vec())
    }

    /// Sorted degree multisets of every simple graph on `n` vertices.
    fn realizable_by_brute_force(n: usize) -> std::collections::BTreeSet<Vec<usize>> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                let mut deg = vec![0usize; n];
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        deg[i] += 1;
                        deg[j] += 1;
                    }
                }
                deg.sort_unstable_by(|a, b| b.cmp(a));
                deg
            })
            .collect()
    }

    #[test]
    fn graphical_examples() {
        assert!(ds(&[3, 1, 1, 1]).is_graphical());
        assert!(!ds(&[3, 3, 1, 1]).is_graphical());
        assert!(ds(&[2, 2, 2, 2]).is_graphical());
        assert!(!ds(&[1, 1, 1]).is_graphical());
        assert!(ds(&[]).is_graphical());
        assert!(ds(&[0, 0]).is_graphical());
        assert!(!ds(&[4, 1, 1, 1]).is_graphical());
    }

    #[test]
    fn brute_force_agrees_on_examples() {
        let four = realizable_by_brute_force(4);
        assert!(!four.contains(&vec![3, 3, 1, 1]));
        assert!(four.contains(&vec![2, 2, 2, 2]));
    }

    #[test]
    fn graphical_agrees_with_exhaustive_search() {
        // Every sequence of length <= 6 with values <= 5.
        for len in 0..=6usize {
            let realizable = realizable_by_brute_force(len);
            let total = 6usize.pow(len as u32);
            for code in 0..total {
                let mut values = Vec::with_capacity(len);
                let mut c = code;
                for _ in 0..len {
                    values.push(c % 6);
                    c /= 6;
                }
                let seq = ds(&values);
                assert_eq!(
                    seq.is_graphical(),
                    realizable.contains(seq.values()),
                    "disagreement on {seq}"
                );
            }
        }
    }

    #[test]
    fn realize_graph_examples() {
        let star = ds(&[3, 1, 1, 1]).realize_graph().unwrap();
        let star = Tree::try_from(star).unwrap();
        let s4 = Tree::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.canonical_code(), s4.canonical_code());

        let cycle = ds(&[2, 2, 2, 2]).realize_graph().unwrap();
        assert_eq!(cycle.size(), 4);
        assert!(cycle.is_connected());
        assert!(cycle.degrees().iter().all(|&d| d == 2));

        assert_eq!(ds(&[1, 1, 1]).realize_graph(), Err(DegSeqError::OddSum(3)));
        assert!(matches!(
            ds(&[3, 3, 1, 1]).realize_graph(),
            Err(DegSeqError::NotGraphical(_))
        ));
    }

    #[test]
    fn realize_graph_matches_input_for_small_sequences() {
        for len in 1..=6usize {
            for code in 0..6usize.pow(len as u32) {
                let mut values = Vec::with_capacity(len);
                let mut c = code;
                for _ in 0..len {
                    values.push(c % 6);
                    c /= 6;
                }
                let seq = ds(&values);
                if let Ok(g) = seq.realize_graph() {
                    assert_eq!(g.degree_sequence(), seq);
                    assert_eq!(g.degrees(), seq.values());
                }
            }
        }
    }

    #[test]
    fn tree_realizable_examples() {
        assert!(ds(&[3, 2, 1, 1, 1]).is_tree_realizable());
        assert!(!ds(&[2, 2, 2, 2]).is_tree_realizable());
        assert!(ds(&[0]).is_tree_realizable());
        assert!(!ds(&[1]).is_tree_realizable());
        assert!(!ds(&[2, 0, 0]).is_tree_realizable());
        assert!(!ds(&[]).is_tree_realizable());
    }

    #[test]
    fn realize_tree_examples() {
        let t = ds(&[3, 2, 1, 1, 1]).realize_tree().unwrap();
        assert_eq!(t.degree_sequence().values(), &[3, 2, 1, 1, 1]);
        assert_eq!(t.degree(0), 3);
        assert_eq!(t.degree(1), 2);
        assert_eq!(t.leaves().count(), 3);

        let k2 = ds(&[1, 1]).realize_tree().unwrap();
        assert_eq!(k2.edges(), &[(0, 1)]);
        let p3 = ds(&[2, 1, 1]).realize_tree().unwrap();
        assert_eq!(p3.degree_sequence().values(), &[2, 1, 1]);
        assert!(matches!(
            ds(&[2, 2, 2, 2]).realize_tree(),
            Err(DegSeqError::NotTreeRealizable(_))
        ));
    }

    #[test]
    fn realize_tree_matches_input_for_all_small_sequences() {
        // Non-increasing sequences of length <= 9 with values in 1..=8.
        fn walk(prefix: &mut Vec<usize>, max: usize, len: usize, checked: &mut usize) {
            if prefix.len() == len {
                let seq = DegreeSequence::new(prefix.clone());
                if seq.is_tree_realizable() {
                    let t = seq.realize_tree().unwrap();
                    assert_eq!(t.degree_sequence(), seq);
                    *checked += 1;
                }
                return;
            }
            for d in 1..=max {
                prefix.push(d);
                walk(prefix, d, len, checked);
                prefix.pop();
            }
        }
        let mut checked = 0;
        for len in 2..=9 {
            walk(&mut Vec::new(), 8, len, &mut checked);
        }
        // One sequence per partition of n - 2: sum of p(0..=7).
        assert_eq!(checked, 1 + 1 + 2 + 3 + 5 + 7 + 11 + 15);
    }

    #[test]
    fn majorization_examples() {
        let a = ds(&[3, 1, 1, 1]);
        let b = ds(&[2, 2, 1, 1]);
        assert_eq!(a.majorizes(&b), Ok(true));
        assert_eq!(b.majorizes(&a), Ok(false));
        assert_eq!(a.majorizes(&a), Ok(true));
        assert_eq!(
            a.majorizes(&ds(&[1, 1, 1])),
            Err(DegSeqError::LengthMismatch(4, 3))
        );
        // Unequal totals never majorize.
        assert_eq!(ds(&[3, 1, 1, 1]).majorizes(&ds(&[1, 1, 1, 1])), Ok(false));
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(
            fibonacci_degrees(6, FibonacciConvention::Paper).unwrap().values(),
            &[13, 8, 5, 3]
        );
        assert_eq!(
            fibonacci_degrees(6, FibonacciConvention::Standard).unwrap().values(),
            &[8, 5, 3, 2]
        );
        assert_eq!(
            fibonacci_degrees(4, FibonacciConvention::Paper).unwrap().values(),
            &[5, 3]
        );
        assert_eq!(
            fibonacci_degrees(3, FibonacciConvention::Paper),
            Err(DegSeqError::FibonacciOrder(3))
        );
        assert_eq!(fibonacci(1, FibonacciConvention::Paper).unwrap(), 1);
        assert_eq!(fibonacci(2, FibonacciConvention::Paper).unwrap(), 2);
        assert_eq!(fibonacci(3, FibonacciConvention::Paper).unwrap(), 3);
        assert_eq!(fibonacci(10, FibonacciConvention::Standard).unwrap(), 55);
        assert!(fibonacci(200, FibonacciConvention::Standard).is_err());
    }

    #[test]
    fn parse_is_order_insensitive() {
        let parsed: DegreeSequence = "1, 3,2,1,1".parse().unwrap();
        assert_eq!(parsed.values(), &[3, 2, 1, 1, 1]);
        assert!("3,x".parse::<DegreeSequence>().is_err());
        assert_eq!(parsed.to_string(), "(3,2,1,1,1)");
    }
}
