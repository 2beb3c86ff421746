//! The enumerated corpus a claim run evaluates over, with per-class
//! extrema.

use std::collections::BTreeMap;

use crate::enumerate::{free_trees, TreeClassFilter};
use crate::format::write_graph6;
use crate::graph::Tree;
use crate::indices::{compute_bundle, IndexBundle};

/// One enumerated tree with its indices precomputed.
#[derive(Clone, Debug)]
pub struct CorpusTree {
    pub tree: Tree,
    pub bundle: IndexBundle,
    pub graph6: String,
}

impl CorpusTree {
    pub fn new(tree: Tree) -> Self {
        let bundle = compute_bundle(&tree);
        let graph6 = write_graph6(&tree);
        Self { tree, bundle, graph6 }
    }
}

/// Extrema of the indices over a class of trees, with the position (in
/// generation order) of the first tree attaining each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStats {
    pub n: usize,
    /// `None` for the class of all trees of order `n`.
    pub max_degree: Option<usize>,
    pub min_degree: usize,
    pub count: usize,
    pub irr_min: u64,
    pub irr_max: u64,
    pub sigma_min: u64,
    pub sigma_max: u64,
    pub irr_t_min: u64,
    pub irr_t_max: u64,
    pub irr_min_at: usize,
    pub irr_max_at: usize,
    pub sigma_min_at: usize,
    pub sigma_max_at: usize,
    pub irr_t_min_at: usize,
    pub irr_t_max_at: usize,
    /// Number of trees attaining `irr_max`.
    pub irr_max_count: usize,
}

impl ClassStats {
    /// Aggregates `(position, bundle)` pairs; `None` for an empty class.
    fn collect<'a>(
        n: usize,
        max_degree: Option<usize>,
        members: impl Iterator<Item = (usize, &'a IndexBundle)>,
    ) -> Option<Self> {
        let mut stats: Option<ClassStats> = None;
        for (pos, b) in members {
            let s = stats.get_or_insert(ClassStats {
                n,
                max_degree,
                min_degree: b.min_degree,
                count: 0,
                irr_min: b.irr,
                irr_max: b.irr,
                sigma_min: b.sigma,
                sigma_max: b.sigma,
                irr_t_min: b.irr_t,
                irr_t_max: b.irr_t,
                irr_min_at: pos,
                irr_max_at: pos,
                sigma_min_at: pos,
                sigma_max_at: pos,
                irr_t_min_at: pos,
                irr_t_max_at: pos,
                irr_max_count: 0,
            });
            s.count += 1;
            s.min_degree = s.min_degree.min(b.min_degree);
            if b.irr < s.irr_min {
                (s.irr_min, s.irr_min_at) = (b.irr, pos);
            }
            if b.irr > s.irr_max {
                (s.irr_max, s.irr_max_at, s.irr_max_count) = (b.irr, pos, 0);
            }
            if b.irr == s.irr_max {
                s.irr_max_count += 1;
            }
            if b.sigma < s.sigma_min {
                (s.sigma_min, s.sigma_min_at) = (b.sigma, pos);
            }
            if b.sigma > s.sigma_max {
                (s.sigma_max, s.sigma_max_at) = (b.sigma, pos);
            }
            if b.irr_t < s.irr_t_min {
                (s.irr_t_min, s.irr_t_min_at) = (b.irr_t, pos);
            }
            if b.irr_t > s.irr_t_max {
                (s.irr_t_max, s.irr_t_max_at) = (b.irr_t, pos);
            }
        }
        stats
    }
}

/// All free trees for a set of orders, in generation order, with class
/// extrema keyed by order and by `(order, maximum degree)`.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub trees: BTreeMap<usize, Vec<CorpusTree>>,
    pub orders: BTreeMap<usize, ClassStats>,
    pub cells: BTreeMap<(usize, usize), ClassStats>,
}

impl Corpus {
    /// Enumerates every free tree of each order in `orders`.
    pub fn build(orders: impl IntoIterator<Item = usize>) -> Self {
        let mut corpus = Corpus::default();
        for n in orders {
            let trees: Vec<CorpusTree> = free_trees(TreeClassFilter::order(n))
                .expect("orders are at least 1")
                .map(CorpusTree::new)
                .collect();
            if let Some(stats) = ClassStats::collect(n, None, trees.iter().map(|t| &t.bundle).enumerate()) {
                corpus.orders.insert(n, stats);
            }
            let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (pos, t) in trees.iter().enumerate() {
                by_degree.entry(t.bundle.max_degree).or_default().push(pos);
            }
            for (delta, positions) in by_degree {
                let members = positions.iter().map(|&pos| (pos, &trees[pos].bundle));
                if let Some(stats) = ClassStats::collect(n, Some(delta), members) {
                    corpus.cells.insert((n, delta), stats);
                }
            }
            corpus.trees.insert(n, trees);
        }
        corpus
    }

    pub fn trees_of_order(&self, n: usize) -> &[CorpusTree] {
        self.trees.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn order_stats(&self, n: usize) -> Option<&ClassStats> {
        self.orders.get(&n)
    }

    pub fn cell(&self, n: usize, max_degree: usize) -> Option<&ClassStats> {
        self.cells.get(&(n, max_degree))
    }

    /// The tree at `position` in the generation order of order `n`.
    pub fn tree_at(&self, n: usize, position: usize) -> &CorpusTree {
        &self.trees[&n][position]
    }

    /// Every tree of the corpus, ascending by order, generation order within.
    pub fn iter(&self) -> impl Iterator<Item = &CorpusTree> {
        self.trees.values().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{extremal, IndexName, Objective, SearchConfig};

    #[test]
    fn order_stats_match_extremal_search() {
        let corpus = Corpus::build(4..=9);
        let cfg = SearchConfig::default();
        for n in 4..=9 {
            let stats = corpus.order_stats(n).unwrap();
            let f = TreeClassFilter::order(n);
            let ext = |index, objective| extremal(f, index, objective, &cfg).unwrap().value;
            assert_eq!(stats.irr_max, ext(IndexName::Irr, Objective::Max));
            assert_eq!(stats.irr_min, ext(IndexName::Irr, Objective::Min));
            assert_eq!(stats.sigma_max, ext(IndexName::Sigma, Objective::Max));
            assert_eq!(stats.sigma_min, ext(IndexName::Sigma, Objective::Min));
            assert_eq!(stats.irr_t_max, ext(IndexName::IrrT, Objective::Max));
            assert_eq!(stats.irr_t_min, ext(IndexName::IrrT, Objective::Min));
        }
    }

    #[test]
    fn cells_partition_each_order() {
        let corpus = Corpus::build(2..=10);
        for n in 2..=10 {
            let total: usize = corpus
                .cells
                .range((n, 0)..=(n, usize::MAX))
                .map(|(_, s)| s.count)
                .sum();
            assert_eq!(total, corpus.trees_of_order(n).len());
            // The star is alone in the cell Δ = n - 1, the path alone in Δ = 2.
            assert_eq!(corpus.cell(n, n - 1).unwrap().count, 1);
            if n >= 3 {
                assert_eq!(corpus.cell(n, 2).unwrap().count, 1);
            }
        }
    }

    #[test]
    fn cell_extrema_are_bounded_by_capped_search() {
        // Extrema over Δ <= d equal the extremum over the cells Δ' <= d.
        let corpus = Corpus::build([10]);
        let cfg = SearchConfig::default();
        for cap in 2..=9 {
            let capped = extremal(TreeClassFilter::with_max_degree(10, cap), IndexName::Sigma, Objective::Max, &cfg).unwrap();
            let from_cells = (2..=cap)
                .filter_map(|d| corpus.cell(10, d))
                .map(|s| s.sigma_max)
                .max()
                .unwrap();
            assert_eq!(capped.value, from_cells);
        }
    }
}
