//! Property suites over randomized tables and clusterings.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_clustering;
use kanon::exact::{enumerate_candidates, row_counts, solve_exact, solve_subset};
use kanon::generate::generate_table;
use kanon::heuristics::{greedy_agglomerative, suppress_all};
use kanon::oracle::{optimal_by_partition, OracleLimits};
use kanon::table::{
    apply_clustering, bad_column_count, closure, clustering_cost, matches, verify_solution,
};
use kanon::AnonPattern;

/// (table, clustering, k) drawn from a seed; n ≤ 10 so the oracle stays
/// in range where needed.
fn seeded_instance(seed: u64, max_n: usize) -> (kanon::Table, kanon::Clustering, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng;
    let k = rng.random_range(1..=3usize);
    let n = rng.random_range(k..=max_n);
    let m = rng.random_range(1..=4usize);
    let sigma = rng.random_range(1..=4usize);
    let table = generate_table(seed, n, m, sigma).unwrap();
    let clustering = random_clustering(&mut rng, n, k);
    (table, clustering, k)
}

proptest! {
    /// The two cost views coincide: stars written by apply_clustering
    /// equal Σ|Sᵢ|·a(Sᵢ), and verification returns the same number.
    #[test]
    fn star_count_equals_clustering_cost(seed in 0u64..2000) {
        let (table, clustering, k) = seeded_instance(seed, 10);
        let cost = clustering_cost(&table, &clustering).unwrap();
        let grid = apply_clustering(&table, &clustering).unwrap();
        let stars: u64 = grid.iter().map(|p| p.cost()).sum();
        prop_assert_eq!(stars, cost);
        prop_assert_eq!(verify_solution(&table, &grid, k).unwrap(), cost);
    }

    /// Every member row matches the closure of its block, and the
    /// closure costs exactly the bad-column count.
    #[test]
    fn closure_matches_members(seed in 0u64..500) {
        let (table, clustering, _) = seeded_instance(seed, 10);
        for block in clustering.blocks() {
            let pattern = closure(block.iter().map(|&i| table.row(i))).unwrap();
            for &i in block {
                prop_assert!(matches(table.row(i), &pattern).unwrap());
            }
            prop_assert_eq!(pattern.cost() as usize, bad_column_count(&table, block).unwrap());
        }
    }

    /// a(S₁ ∪ S₂) ≥ max(a(S₁), a(S₂)) for disjoint nonempty blocks.
    #[test]
    fn merging_is_monotone(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        use rand::Rng;
        let n = rng.random_range(2..=10usize);
        let m = rng.random_range(1..=4usize);
        let sigma = rng.random_range(1..=4usize);
        let table = generate_table(seed, n, m, sigma).unwrap();
        let cut = rng.random_range(1..n);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let (s1, s2) = order.split_at(cut);
        let a1 = bad_column_count(&table, s1).unwrap();
        let a2 = bad_column_count(&table, s2).unwrap();
        let merged = bad_column_count(&table, &order).unwrap();
        prop_assert!(merged >= a1.max(a2));
    }

    /// Restriction soundness: the closures of any valid clustering's
    /// blocks are candidates, and the subset they form costs at most the
    /// clustering.
    #[test]
    fn block_closures_are_candidates_and_cheaper(seed in 0u64..300) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ffee);
        use rand::Rng;
        let k = rng.random_range(1..=3usize);
        let n = rng.random_range(k.max(2)..=8usize);
        let m = rng.random_range(1..=3usize);
        let sigma = rng.random_range(1..=3usize);
        let table = generate_table(seed, n, m, sigma).unwrap();
        let clustering = random_clustering(&mut rng, n, k);
        let counts = row_counts(&table);
        let candidates = enumerate_candidates(&counts, k).unwrap();

        let mut open: Vec<AnonPattern> = clustering
            .blocks()
            .iter()
            .map(|b| closure(b.iter().map(|&i| table.row(i))).unwrap())
            .collect();
        open.sort();
        open.dedup();
        for p in &open {
            prop_assert!(
                candidates.patterns.contains(p),
                "closure {} missing from candidates", p.render()
            );
        }
        let assignment = solve_subset(&open, &counts, k).unwrap();
        prop_assert!(assignment.is_some(), "closure subset must be feasible");
        let cost = clustering_cost(&table, &clustering).unwrap();
        prop_assert!(assignment.unwrap().cost <= cost);
    }

    /// A subset containing the all-star pattern is always feasible when
    /// n ≥ k.
    #[test]
    fn all_star_subset_is_feasible(seed in 0u64..300) {
        let (table, _, k) = seeded_instance(seed, 10);
        let counts = row_counts(&table);
        let all_star = AnonPattern::from_tokens(&vec!["*"; table.column_count()]).unwrap();
        let assignment = solve_subset(&[all_star], &counts, k).unwrap();
        prop_assert!(assignment.is_some());
        prop_assert_eq!(
            assignment.unwrap().cost,
            (table.row_count() * table.column_count()) as u64
        );
    }

    /// The oracle never exceeds the cost of any sampled valid clustering,
    /// nor the suppress-everything bound n·m.
    #[test]
    fn oracle_lower_bounds_sampled_clusterings(seed in 0u64..200) {
        let (table, clustering, k) = seeded_instance(seed, 8);
        let report = optimal_by_partition(&table, k, OracleLimits::default()).unwrap();
        let sampled = clustering_cost(&table, &clustering).unwrap();
        prop_assert!(report.cost <= sampled);
        prop_assert!(report.cost <= (table.row_count() * table.column_count()) as u64);
    }

    /// The candidate set always contains the all-star pattern when the
    /// instance is feasible, and every candidate matches ≥ k copies.
    #[test]
    fn candidate_set_contains_all_star(seed in 0u64..200) {
        let (table, _, k) = seeded_instance(seed, 10);
        let counts = row_counts(&table);
        prop_assert_eq!(
            (0..counts.len()).map(|t| counts.count(t)).sum::<usize>(),
            table.row_count()
        );
        let candidates = enumerate_candidates(&counts, k).unwrap();
        let all_star = AnonPattern::from_tokens(&vec!["*"; table.column_count()]).unwrap();
        prop_assert!(candidates.patterns.contains(&all_star));
        prop_assert!(candidates.match_counts.iter().all(|&mc| mc >= k));
    }

    /// Heuristic feasibility and dominance: both reports verify, greedy
    /// never beats the optimum and never loses to suppress-all.
    #[test]
    fn heuristics_verify_and_dominate(seed in 0u64..300) {
        let (table, _, k) = seeded_instance(seed, 8);
        let greedy = greedy_agglomerative(&table, k).unwrap();
        let blanket = suppress_all(&table, k).unwrap();
        prop_assert_eq!(
            verify_solution(&table, &greedy.anonymized, k).unwrap(),
            greedy.cost
        );
        prop_assert_eq!(
            verify_solution(&table, &blanket.anonymized, k).unwrap(),
            blanket.cost
        );
        prop_assert!(greedy.cost <= blanket.cost);
        let exact = solve_exact(&table, k, None).unwrap();
        prop_assert!(greedy.cost >= exact.cost);
        prop_assert!(blanket.cost >= exact.cost);
    }

    /// Verification accepts every exact report at exactly its cost.
    #[test]
    fn verify_accepts_exact_reports(seed in 0u64..200) {
        let (table, _, k) = seeded_instance(seed, 8);
        let report = solve_exact(&table, k, None).unwrap();
        prop_assert_eq!(
            verify_solution(&table, &report.anonymized, k).unwrap(),
            report.cost
        );
        prop_assert_eq!(
            clustering_cost(&table, &report.clustering).unwrap(),
            report.cost
        );
    }
}
