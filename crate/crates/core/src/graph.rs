//! Simple undirected graphs and trees over dense vertex ids `0..n`.
//!
//! Both types are immutable once built. Degrees are computed at
//! construction so index computations never rescan adjacency.

use std::collections::VecDeque;
use std::ops::Deref;

use thiserror::Error;

use crate::degseq::DegreeSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("endpoint {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("a tree on {n} vertices has {expected} edges, got {m}")]
    EdgeCount { n: usize, m: usize, expected: usize },
    #[error("a tree needs at least one vertex")]
    Empty,
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Normalized so that `u < v`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::OutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let degrees = adjacency.iter().map(Vec::len).collect();
        Ok(Self {
            n,
            edges: normalized,
            adjacency,
            degrees,
        })
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Degrees indexed by vertex id.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degrees.clone())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges).expect("relabeling by a permutation keeps the graph simple")
    }
}

/// A connected acyclic [`Graph`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree(Graph);

impl Tree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::try_from(Graph::new(n, edges)?)
    }

    pub fn as_graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    pub fn relabel(&self, perm: &[usize]) -> Tree {
        Tree(self.0.relabel(perm))
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&v| self.degree(v) == 1)
    }

    /// One or two central vertices, found by peeling leaves layer by layer.
    pub fn centers(&self) -> Vec<usize> {
        let n = self.order();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut remaining_degree = self.degrees().to_vec();
        let mut layer: Vec<usize> = self.leaves().collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                for &w in self.neighbors(leaf) {
                    remaining_degree[w] -= 1;
                    if remaining_degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// Isomorphism-invariant encoding of the tree.
    ///
    /// AHU parenthesis code of the tree rooted at its center; a bicentral
    /// tree takes the lexicographically smaller of its two center-rooted
    /// codes. Two trees have equal codes iff they are isomorphic.
    pub fn canonical_code(&self) -> Vec<u8> {
        self.centers()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .unwrap_or_default()
    }

    /// AHU code of the tree rooted at `root`: `(` children `)` with the
    /// children's codes sorted.
    pub fn rooted_code(&self, root: usize) -> Vec<u8> {
        let n = self.order();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        parent[root] = root;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in self.neighbors(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }

        let mut child_codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
        let mut root_code = Vec::new();
        for &u in order.iter().rev() {
            let mut children = std::mem::take(&mut child_codes[u]);
            children.sort_unstable();
            let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
            code.push(b'(');
            for child in children {
                code.extend_from_slice(&child);
            }
            code.push(b')');
            if u == root {
                root_code = code;
            } else {
                child_codes[parent[u]].push(code);
            }
        }
        root_code
    }
}

impl TryFrom<Graph> for Tree {
    type Error = GraphError;

    fn try_from(graph: Graph) -> Result<Self, Self::Error> {
        let n = graph.order();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if graph.size() != n - 1 {
            // A forest with fewer edges is the common malformed input;
            // report it as disconnected rather than as a count mismatch.
            if graph.size() < n - 1 && !graph.is_connected() {
                return Err(GraphError::Disconnected);
            }
            return Err(GraphError::EdgeCount {
                n,
                m: graph.size(),
                expected: n - 1,
            });
        }
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(Tree(graph))
    }
}

impl Deref for Tree {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl AsRef<Graph> for Tree {
    fn as_ref(&self) -> &Graph {
        &self.0
    }
}

impl AsRef<Graph> for Graph {
    fn as_ref(&self) -> &Graph {
        self
    }
}
