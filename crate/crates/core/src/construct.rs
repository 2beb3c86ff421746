//! Named tree families and random labeled trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::degseq::{fibonacci_terms, DegSeqError, FibonacciConvention};
use crate::graph::Tree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("{family} needs order at least {min}, got {n}")]
    OrderTooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("caterpillar spine needs at least 2 vertices, got {0}")]
    ShortSpine(usize),
    #[error("spine vertex {index} cannot have degree {degree} (needs at least {min})")]
    InfeasibleSpineDegree {
        index: usize,
        degree: usize,
        min: usize,
    },
    #[error("Prüfer entry {value} is out of range for order {n}")]
    PruferEntry { value: usize, n: usize },
    #[error(transparent)]
    DegreeSequence(#[from] DegSeqError),
}

/// `K_{1,n-1}` with vertex 0 at the center.
pub fn star(n: usize) -> Result<Tree, ConstructError> {
    if n < 2 {
        return Err(ConstructError::OrderTooSmall {
            family: "star",
            min: 2,
            n,
        });
    }
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Ok(Tree::new(n, &edges).expect("star is a tree"))
}

/// The chain `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Tree, ConstructError> {
    if n < 1 {
        return Err(ConstructError::OrderTooSmall {
            family: "path",
            min: 1,
            n,
        });
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Ok(Tree::new(n, &edges).expect("path is a tree"))
}

/// Caterpillar whose spine vertex `i` (vertex id `i`) ends with degree
/// `spine_degrees[i]`. End vertices carry `d - 1` pendant leaves, internal
/// ones `d - 2`. Leaves are numbered after the spine in spine order.
pub fn caterpillar(spine_degrees: &[usize]) -> Result<Tree, ConstructError> {
    let k = spine_degrees.len();
    if k < 2 {
        return Err(ConstructError::ShortSpine(k));
    }
    for (index, &degree) in spine_degrees.iter().enumerate() {
        let min = if index == 0 || index == k - 1 { 1 } else { 2 };
        if degree < min {
            return Err(ConstructError::InfeasibleSpineDegree { index, degree, min });
        }
    }
    let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    let mut next = k;
    for (i, &d) in spine_degrees.iter().enumerate() {
        let spine_neighbors = if i == 0 || i == k - 1 { 1 } else { 2 };
        for _ in spine_neighbors..d {
            edges.push((i, next));
            next += 1;
        }
    }
    Ok(Tree::new(next, &edges).expect("caterpillar is a tree"))
}

/// Caterpillar with spine degrees `F_3, ..., F_n` in index order.
pub fn fibonacci_caterpillar(n: usize, convention: FibonacciConvention) -> Result<Tree, ConstructError> {
    let spine: Vec<usize> = fibonacci_terms(n, convention)?
        .into_iter()
        .map(|f| f as usize)
        .collect();
    caterpillar(&spine)
}

/// Decodes a Prüfer string over `0..n` (length `n - 2`) into its labeled tree.
pub fn prufer_decode(n: usize, sequence: &[usize]) -> Result<Tree, ConstructError> {
    if n < 2 {
        return if n == 1 && sequence.is_empty() {
            Ok(Tree::new(1, &[]).expect("single vertex"))
        } else {
            Err(ConstructError::OrderTooSmall {
                family: "Prüfer tree",
                min: 1,
                n,
            })
        };
    }
    assert_eq!(sequence.len(), n - 2, "Prüfer string length must be n - 2");
    if let Some(&value) = sequence.iter().find(|&&v| v >= n) {
        return Err(ConstructError::PruferEntry { value, n });
    }
    let edges = prufer_edges(n, sequence);
    Ok(Tree::new(n, &edges).expect("Prüfer decoding yields a tree"))
}

/// Linear-time Prüfer decoding. `sequence` must be valid for order `n >= 2`.
pub(crate) fn prufer_edges(n: usize, sequence: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &v in sequence {
        degree[v] += 1;
    }
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    let mut edges = Vec::with_capacity(n - 1);
    for &v in sequence {
        edges.push((leaf, v));
        degree[leaf] = 0;
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

/// Uniform random labeled tree on `n` vertices from a random Prüfer string.
/// Deterministic for a fixed `(n, seed)`.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree, ConstructError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(n, &mut rng)
}

pub fn random_tree_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tree, ConstructError> {
    if n == 0 {
        return Err(ConstructError::OrderTooSmall {
            family: "random tree",
            min: 1,
            n,
        });
    }
    if n <= 2 {
        return prufer_decode(n, &[]);
    }
    let sequence: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    prufer_decode(n, &sequence)
}

/// Random recursive tree with every degree at most `max_degree`: vertex `i`
/// attaches to a uniformly chosen earlier vertex that still has room.
/// Returns `None` when no tree of order `n` fits the cap.
pub fn random_tree_bounded<R: Rng + ?Sized>(n: usize, max_degree: usize, rng: &mut R) -> Option<Tree> {
    if n == 0 || (n >= 2 && max_degree == 0) || (n >= 3 && max_degree < 2) {
        return None;
    }
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = vec![0];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let slot = rng.random_range(0..open.len());
        let parent = open[slot];
        edges.push((parent, v));
        degree[parent] += 1;
        degree[v] = 1;
        if degree[parent] >= max_degree {
            open.swap_remove(slot);
        }
        if max_degree > 1 {
            open.push(v);
        }
    }
    Some(Tree::new(n, &edges).expect("recursive attachment yields a tree"))
}
