//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{worked_example, worked_example_anonymized, random_clustering};
use kanon::exact::solve_exact;
use kanon::generate::generate_table;
use kanon::heuristics::{greedy_agglomerative, suppress_all};
use kanon::oracle::{optimal_by_partition, OracleLimits};
use kanon::reduction::{
    abc, cover_to_solution, extra_cost, min_vertex_cover, reduce, solution_to_cover, Graph,
    REDUCTION_K,
};
use kanon::table::{
    apply_clustering, bad_column_count, clustering_cost, verify_solution, SolverReport,
};

const TEST_GRAPHS: [(&str, usize, usize, u64, usize); 4] = [
    // (name, r, |E|, abc, τ) — abc from 27r + 2|E| + 14, τ frozen from
    // exhaustive enumeration (reverified below).
    ("k4", 4, 6, 134, 3),
    ("k33", 6, 9, 194, 3),
    ("q3", 8, 12, 254, 4),
    ("petersen", 10, 15, 314, 6),
];

#[test]
fn criterion_1_worked_example_reproduction() {
    let start = Instant::now();
    let table = worked_example();

    let exact = solve_exact(&table, 2, None).unwrap();
    assert_eq!(exact.cost, 4, "exact cost on the worked example");
    let oracle = optimal_by_partition(&table, 2, OracleLimits::default()).unwrap();
    assert_eq!(oracle.cost, 4, "bruteforce cost on the worked example");

    // Row order preserved, pattern per row identical to the reference
    // anonymization.
    assert_eq!(exact.anonymized, worked_example_anonymized());

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("acceptance criterion 1 (4x3 worked-example reproduction, both solvers cost 4): PASS");
}

#[test]
fn criterion_2_oracle_equivalence_on_200_instances() {
    let start = Instant::now();
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xacce5500);
        let k = if rng.random_bool(0.5) { 2 } else { 3 };
        let n = rng.random_range(k..=8usize);
        let m = rng.random_range(1..=3usize);
        let sigma = rng.random_range(1..=3usize);
        let table = generate_table(seed, n, m, sigma).unwrap();

        let exact = solve_exact(&table, k, None).unwrap();
        let oracle = optimal_by_partition(&table, k, OracleLimits::default()).unwrap();
        assert_eq!(
            exact.cost, oracle.cost,
            "divergence at seed {seed} (n={n}, m={m}, sigma={sigma}, k={k})"
        );
        assert_eq!(
            verify_solution(&table, &exact.anonymized, k).unwrap(),
            exact.cost
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 2 min");
    println!("acceptance criterion 2 (exact = bruteforce on 200 seeded instances): PASS");
}

#[test]
fn criterion_3_reduction_counts() {
    for (name, r, e, abc_value, _) in TEST_GRAPHS {
        let g = Graph::named(name).unwrap();
        assert_eq!(g.vertex_count(), r, "{name} vertex count");
        assert_eq!(g.edge_count(), e, "{name} edge count");
        let rt = reduce(&g).unwrap();
        assert_eq!(rt.table().row_count(), 20 * r + 2 * e + 14, "{name} rows");
        assert_eq!(abc(&g).unwrap(), abc_value, "{name} aggregated base cost");
        assert_eq!(
            abc_value,
            27 * r as u64 + 2 * e as u64 + 14,
            "{name} abc formula substitution"
        );
        assert_eq!(rt.special_symbols(), 15 * r + 14, "{name} special count");

        // Every special symbol occurs exactly once table-wide: specials
        // are exactly the symbols of total occurrence one, and there are
        // 15r + 14 of them.
        let mut occurrences = std::collections::HashMap::new();
        for row in rt.table().rows() {
            for sym in row.entries() {
                *occurrences.entry(sym.as_str().to_owned()).or_insert(0usize) += 1;
            }
        }
        let singletons = occurrences.values().filter(|&&c| c == 1).count();
        assert_eq!(singletons, rt.special_symbols(), "{name} single-use symbols");
    }
    println!("acceptance criterion 3 (reduction row/abc/special counts on k4, k33, q3, petersen): PASS");
}

#[test]
fn criterion_4_cover_to_solution_identity() {
    let start = Instant::now();
    for (name, _, _, abc_value, tau) in TEST_GRAPHS {
        let g = Graph::named(name).unwrap();
        let cover = min_vertex_cover(&g, 16).unwrap();
        assert_eq!(cover.len(), tau, "{name} minimum cover size");

        // Independent minimality check: no smaller subset covers.
        if tau > 0 {
            let r = g.vertex_count();
            let smaller_exists = subsets_of_size(r, tau - 1)
                .any(|s| g.uncovered_edge(&s.iter().copied().collect()).is_none());
            assert!(!smaller_exists, "{name} has a cover below τ");
        }

        let rt = reduce(&g).unwrap();
        let report = cover_to_solution(&rt, &cover).unwrap();
        let verified = verify_solution(rt.table(), &report.anonymized, REDUCTION_K).unwrap();
        assert_eq!(verified, report.cost, "{name} verification cost");
        assert_eq!(report.cost, abc_value + tau as u64, "{name} abc + τ identity");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("acceptance criterion 4 (cover-to-solution costs abc + τ on all four graphs): PASS");
}

#[test]
fn criterion_5_solution_to_cover_bound() {
    for (name, _, _, abc_value, tau) in TEST_GRAPHS {
        let g = Graph::named(name).unwrap();
        let rt = reduce(&g).unwrap();
        let cover = min_vertex_cover(&g, 16).unwrap();

        let constructed = cover_to_solution(&rt, &cover).unwrap();
        let greedy = greedy_agglomerative(rt.table(), REDUCTION_K).unwrap();
        let blanket = suppress_all(rt.table(), REDUCTION_K).unwrap();

        for report in [&constructed, &greedy, &blanket] {
            let ledger = extra_cost(&rt, &report.anonymized).unwrap();
            let extracted = solution_to_cover(&rt, &report.anonymized).unwrap();
            let set: BTreeSet<usize> = extracted.iter().copied().collect();
            assert!(
                g.uncovered_edge(&set).is_none(),
                "{name}/{}: extracted set is not a cover",
                report.solver
            );
            assert!(
                extracted.len() as u64 <= ledger.total_extra,
                "{name}/{}: |C|={} exceeds extra {}",
                report.solver,
                extracted.len(),
                ledger.total_extra
            );
            assert!(
                report.cost >= abc_value + tau as u64,
                "{name}/{}: cost {} below abc + τ = {}",
                report.solver,
                report.cost,
                abc_value + tau as u64
            );
        }
    }
    println!("acceptance criterion 5 (extracted covers within extra cost; every solution ≥ abc + τ): PASS");
}

#[test]
fn criterion_6_asymptotic_results_are_documented_not_benchmarked() {
    // NP-hardness, MAXSNP-hardness, and the 6238/6237 inapproximability
    // bound are asymptotic statements with no finite experiment. They are
    // covered by the reduction soundness checks of criteria 4 and 5 (both
    // directions of the cover ↔ solution correspondence), not by any
    // numeric benchmark. The constant is reported in the README only.
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md"))
        .expect("README.md at the workspace root");
    assert!(
        readme.contains("6238/6237"),
        "README must report the inapproximability constant"
    );
    assert!(
        readme.to_lowercase().contains("np-hard"),
        "README must state the hardness result"
    );
    println!("acceptance criterion 6 (asymptotic hardness documented, covered by property suites): PASS");
}

#[test]
fn criterion_7_property_suite_1000_pairs() {
    let start = Instant::now();
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b9);
        let k = rng.random_range(1..=3usize);
        let n = rng.random_range(k..=12usize);
        let m = rng.random_range(1..=4usize);
        let sigma = rng.random_range(1..=4usize);
        let table = generate_table(seed, n, m, sigma).unwrap();
        let clustering = random_clustering(&mut rng, n, k);

        // Stars in the applied grid equal the clustering cost, and the
        // pair re-verifies at exactly that cost.
        let cost = clustering_cost(&table, &clustering).unwrap();
        let grid = apply_clustering(&table, &clustering).unwrap();
        let stars: u64 = grid.iter().map(|p| p.cost()).sum();
        assert_eq!(stars, cost, "seed {seed}: star count vs clustering cost");
        assert_eq!(
            verify_solution(&table, &grid, k).unwrap(),
            cost,
            "seed {seed}: verification round trip"
        );
        let report = SolverReport::from_clustering(&table, clustering, "sampled").unwrap();
        assert_eq!(report.cost, cost);

        // Merge monotonicity on a random bipartition of the rows.
        if n >= 2 {
            let cut = rng.random_range(1..n);
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, rng.random_range(0..=i));
            }
            let a = bad_column_count(&table, &order[..cut]).unwrap();
            let b = bad_column_count(&table, &order[cut..]).unwrap();
            let merged = bad_column_count(&table, &order).unwrap();
            assert!(
                merged >= a.max(b),
                "seed {seed}: merge dropped bad columns"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("acceptance criterion 7 (1000 seeded pairs: cost views agree, verify round-trips, merges monotone): PASS");
}

/// All size-`size` subsets of 0..n, for the independent τ minimality
/// check.
fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut combo: Vec<usize> = (0..size).collect();
    let mut done = size > n;
    let mut first = true;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        if first {
            first = false;
            return Some(combo.clone());
        }
        // Lexicographic successor.
        let mut i = combo.len();
        loop {
            if i == 0 {
                done = true;
                return None;
            }
            i -= 1;
            if combo[i] < n - (combo.len() - i) {
                combo[i] += 1;
                for j in i + 1..combo.len() {
                    combo[j] = combo[j - 1] + 1;
                }
                return Some(combo.clone());
            }
        }
    })
}
