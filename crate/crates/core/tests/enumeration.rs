//! Free-tree generation against independent counts and filters.

use std::collections::HashSet;

use irrtree::construct::{path, star};
use irrtree::enumerate::{extremal, free_trees, labeled_trees_oracle, IndexName, Objective, SearchConfig, TreeClassFilter};

/// Unlabeled tree counts for n = 1..=14.
const KNOWN: [usize; 14] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159];

#[test]
fn counts_match_the_known_sequence() {
    for (i, &want) in KNOWN.iter().enumerate() {
        assert_eq!(free_trees(TreeClassFilter::order(i + 1)).unwrap().count(), want, "n={}", i + 1);
    }
}

#[test]
fn oracle_agrees_on_small_orders() {
    for n in 2..=7 {
        let oracle = labeled_trees_oracle(n).unwrap();
        assert_eq!(oracle.labeled_trees, (n as u64).pow(n as u32 - 2));
        let generated: HashSet<Vec<u8>> = free_trees(TreeClassFilter::order(n)).unwrap().map(|t| t.canonical_code()).collect();
        let from_oracle: HashSet<Vec<u8>> = oracle.representatives.iter().map(|t| t.canonical_code()).collect();
        assert_eq!(generated, from_oracle, "n={n}");
    }
}

#[test]
fn stream_has_no_isomorphic_duplicates() {
    for n in 1..=12 {
        let codes: Vec<Vec<u8>> = free_trees(TreeClassFilter::order(n)).unwrap().map(|t| t.canonical_code()).collect();
        let distinct: HashSet<&Vec<u8>> = codes.iter().collect();
        assert_eq!(distinct.len(), codes.len());
    }
}

#[test]
fn degree_cap_filters_the_full_stream() {
    for n in 3..=11 {
        for cap in 2..n {
            let filtered: Vec<_> = free_trees(TreeClassFilter::with_max_degree(n, cap)).unwrap().collect();
            let by_hand = free_trees(TreeClassFilter::order(n)).unwrap().filter(|t| t.max_degree() <= cap).count();
            assert_eq!(filtered.len(), by_hand, "n={n} cap={cap}");
            assert!(filtered.iter().all(|t| t.max_degree() <= cap));
        }
    }
}

#[test]
fn generation_order_is_stable() {
    let a: Vec<_> = free_trees(TreeClassFilter::order(10)).unwrap().collect();
    let b: Vec<_> = free_trees(TreeClassFilter::order(10)).unwrap().collect();
    assert_eq!(a, b);
}

#[test]
fn exhaustive_extrema_of_small_orders() {
    let cfg = SearchConfig::default();
    for n in 4..=12 {
        let f = TreeClassFilter::order(n);
        let max = extremal(f, IndexName::Sigma, Objective::Max, &cfg).unwrap();
        assert!(max.exhaustive);
        assert_eq!(max.witness.canonical_code(), star(n).unwrap().canonical_code());
        let min = extremal(f, IndexName::IrrT, Objective::Min, &cfg).unwrap();
        assert_eq!(min.value, 2 * (n as u64 - 2));
        assert_eq!(min.witness.canonical_code(), path(n).unwrap().canonical_code());
    }
}

#[test]
fn search_beyond_the_exhaustive_limit_is_seeded() {
    let cfg = SearchConfig { seed: 7, ..SearchConfig::default() };
    let f = TreeClassFilter::order(18);
    let a = extremal(f, IndexName::Irr, Objective::Max, &cfg).unwrap();
    let b = extremal(f, IndexName::Irr, Objective::Max, &cfg).unwrap();
    assert!(!a.exhaustive);
    assert_eq!((a.value, a.witness.canonical_code()), (b.value, b.witness.canonical_code()));
    assert!(a.value <= 17 * 16);
}

#[test]
fn infeasible_and_invalid_filters_are_errors() {
    assert!(free_trees(TreeClassFilter::order(0)).is_err());
    let cfg = SearchConfig::default();
    assert!(extremal(TreeClassFilter::with_max_degree(10, 1), IndexName::Irr, Objective::Max, &cfg).is_err());
}
