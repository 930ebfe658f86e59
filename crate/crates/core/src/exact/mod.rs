//! Exact polynomial-for-constant-dimensions solver.
//!
//! The solver enumerates candidate anonymization patterns (starrings of
//! rows actually present, filtered to those matching at least k row
//! copies), iterates over subsets of candidates as the set of open
//! patterns, and solves each subset's assignment problem exactly as a
//! min-cost flow with arc lower bounds. Candidate restriction is
//! lossless: the closures of any valid clustering's blocks are starrings
//! of member rows and match at least k copies, so some enumerated subset
//! reproduces every clustering's cost.

mod flow;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::table::{matches_unchecked, AnonPattern, Clustering, RowPattern, SolverReport, Table};
use crate::util::next_combination;
use flow::LowerBoundedFlow;

/// Default cap on the number of candidate subsets visited per solve.
pub const DEFAULT_SUBSET_BUDGET: u64 = 1 << 20;

/// Multiplicities s(t) of the distinct row patterns of a table, in first
/// occurrence order, along with the concrete row indices behind each.
#[derive(Clone, Debug)]
pub struct RowCounts {
    patterns: Vec<RowPattern>,
    occurrences: Vec<Vec<usize>>,
    columns: usize,
    total: usize,
}

impl RowCounts {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[RowPattern] {
        &self.patterns
    }

    /// s(t) for the i-th distinct pattern.
    pub fn count(&self, i: usize) -> usize {
        self.occurrences[i].len()
    }

    /// Row indices of the i-th distinct pattern, ascending.
    pub fn occurrences(&self, i: usize) -> &[usize] {
        &self.occurrences[i]
    }

    /// Σ s(t); the table's row count.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn columns(&self) -> usize {
        self.columns
    }
}

/// Multiplicity map of the distinct rows; zero-count patterns omitted.
pub fn row_counts(table: &Table) -> RowCounts {
    let mut index: HashMap<&RowPattern, usize> = HashMap::new();
    let mut patterns = Vec::new();
    let mut occurrences: Vec<Vec<usize>> = Vec::new();
    for (i, row) in table.rows().iter().enumerate() {
        match index.get(row) {
            Some(&slot) => occurrences[slot].push(i),
            None => {
                index.insert(row, patterns.len());
                patterns.push(row.clone());
                occurrences.push(vec![i]);
            }
        }
    }
    RowCounts {
        patterns,
        occurrences,
        columns: table.column_count(),
        total: table.row_count(),
    }
}

/// Candidate anonymization patterns, sorted by (cost, entries), each
/// matching at least k row copies.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub patterns: Vec<AnonPattern>,
    pub match_counts: Vec<usize>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

/// All starrings of rows present in the table, deduplicated and filtered
/// to those whose matched copy count reaches k.
pub fn enumerate_candidates(counts: &RowCounts, k: usize) -> Result<CandidateSet> {
    if k == 0 {
        return Err(Error::Argument("privacy parameter k must be at least 1".into()));
    }
    let m = counts.columns();
    if m > 20 {
        return Err(Error::Resource(format!(
            "candidate enumeration over {m} columns needs 2^{m} starrings per row"
        )));
    }
    let mut seen: HashMap<AnonPattern, ()> = HashMap::new();
    let mut raw = Vec::new();
    let mut mask_buf = vec![false; m];
    for row in counts.patterns() {
        for mask in 0u32..(1u32 << m) {
            for (j, starred) in mask_buf.iter_mut().enumerate() {
                *starred = mask & (1 << j) != 0;
            }
            let p = AnonPattern::starring(row, &mask_buf)?;
            if seen.insert(p.clone(), ()).is_none() {
                raw.push(p);
            }
        }
    }
    let mut kept: Vec<(AnonPattern, usize)> = raw
        .into_iter()
        .filter_map(|p| {
            let mc: usize = (0..counts.len())
                .filter(|&t| matches_unchecked(&counts.patterns()[t], &p))
                .map(|t| counts.count(t))
                .sum();
            (mc >= k).then_some((p, mc))
        })
        .collect();
    kept.sort_by(|(a, _), (b, _)| a.cost().cmp(&b.cost()).then_with(|| a.cmp(b)));
    let (patterns, match_counts) = kept.into_iter().unzip();
    Ok(CandidateSet { patterns, match_counts })
}

/// An integral assignment of row copies to open patterns.
#[derive(Clone, Debug)]
pub struct SubsetAssignment {
    /// (open pattern index, distinct row index, copies), copies > 0,
    /// sorted by (pattern, row).
    pub flows: Vec<(usize, usize, usize)>,
    pub cost: u64,
}

impl SubsetAssignment {
    pub fn copies(&self, pattern: usize, row: usize) -> usize {
        self.flows
            .iter()
            .find(|&&(p, t, _)| p == pattern && t == row)
            .map_or(0, |&(_, _, c)| c)
    }
}

/// Minimum-cost assignment attaching every row copy to a matching open
/// pattern, with every open pattern receiving at least k copies. Returns
/// None when no such assignment exists.
pub fn solve_subset(
    open: &[AnonPattern],
    counts: &RowCounts,
    k: usize,
) -> Result<Option<SubsetAssignment>> {
    if open.is_empty() {
        return Err(Error::Argument("the open pattern set may not be empty".into()));
    }
    if k == 0 {
        return Err(Error::Argument("privacy parameter k must be at least 1".into()));
    }
    for (i, p) in open.iter().enumerate() {
        if p.len() != counts.columns() {
            return Err(Error::Dimension(format!(
                "pattern {i} has {} columns, table has {}",
                p.len(),
                counts.columns()
            )));
        }
        if open[..i].contains(p) {
            return Err(Error::Argument(format!(
                "duplicate open pattern {}",
                p.render()
            )));
        }
    }

    let rows = counts.len();
    let n = counts.total();
    if k.saturating_mul(open.len()) > n {
        return Ok(None);
    }
    let mut matched: Vec<Vec<usize>> = vec![Vec::new(); rows]; // pattern indices per row
    for (t, row) in counts.patterns().iter().enumerate() {
        for (p, pattern) in open.iter().enumerate() {
            if matches_unchecked(row, pattern) {
                matched[t].push(p);
            }
        }
        if matched[t].is_empty() {
            return Ok(None);
        }
    }

    // source → row (fixed s(t)) → pattern (cost per copy) → sink (≥ k),
    // plus a return arc closing the circulation.
    let source = 0;
    let sink = 1;
    let row_node = |t: usize| 2 + t;
    let pattern_node = |p: usize| 2 + rows + p;
    let mut net = LowerBoundedFlow::new(2 + rows + open.len());
    for t in 0..rows {
        let s = counts.count(t) as i64;
        net.add_arc(source, row_node(t), s, s, 0);
    }
    let mut handles = Vec::new();
    for (t, pats) in matched.iter().enumerate() {
        for &p in pats {
            let handle = net.add_arc(
                row_node(t),
                pattern_node(p),
                0,
                counts.count(t) as i64,
                open[p].cost() as i64,
            );
            handles.push((p, t, handle));
        }
    }
    for p in 0..open.len() {
        net.add_arc(pattern_node(p), sink, k as i64, n as i64, 0);
    }
    net.add_arc(sink, source, 0, n as i64, 0);

    let Some(solution) = net.solve() else {
        return Ok(None);
    };

    let mut flows = Vec::new();
    let mut per_row = vec![0usize; rows];
    let mut per_pattern = vec![0usize; open.len()];
    for &(p, t, handle) in &handles {
        let copies = solution.flow(handle);
        if copies > 0 {
            per_row[t] += copies as usize;
            per_pattern[p] += copies as usize;
            flows.push((p, t, copies as usize));
        }
    }
    for (t, &got) in per_row.iter().enumerate() {
        if got != counts.count(t) {
            return Err(Error::Internal(format!(
                "row pattern {t} assigned {got} copies, expected {}",
                counts.count(t)
            )));
        }
    }
    for (p, &got) in per_pattern.iter().enumerate() {
        if got < k {
            return Err(Error::Internal(format!(
                "open pattern {p} received {got} copies, needs at least {k}"
            )));
        }
    }
    flows.sort_unstable();
    Ok(Some(SubsetAssignment {
        flows,
        cost: solution.cost as u64,
    }))
}

/// Solve diagnostics: candidate count and subsets visited/solved.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactStats {
    pub candidates: usize,
    pub subsets_visited: u64,
    pub subsets_solved: u64,
}

/// Minimum-cost k-anonymization by exhaustive search over open-pattern
/// subsets. `budget` caps the number of subsets visited (default 2^20).
pub fn solve_exact(table: &Table, k: usize, budget: Option<u64>) -> Result<SolverReport> {
    solve_exact_with_stats(table, k, budget).map(|(report, _)| report)
}

pub fn solve_exact_with_stats(
    table: &Table,
    k: usize,
    budget: Option<u64>,
) -> Result<(SolverReport, ExactStats)> {
    let n = table.row_count();
    if k == 0 {
        return Err(Error::Argument("privacy parameter k must be at least 1".into()));
    }
    if n < k {
        return Err(Error::Infeasible(format!(
            "k exceeds row count (k={k}, n={n})"
        )));
    }
    let budget = budget.unwrap_or(DEFAULT_SUBSET_BUDGET);
    let counts = row_counts(table);
    let candidates = enumerate_candidates(&counts, k)?;
    let mut stats = ExactStats {
        candidates: candidates.len(),
        ..ExactStats::default()
    };

    // k = 1: the zero-cost solution grouping copies of each distinct row
    // is always optimal, and is exactly what subset enumeration would
    // return after visiting every smaller subset.
    if k == 1 {
        let blocks: Vec<Vec<usize>> = (0..counts.len())
            .map(|t| counts.occurrences(t).to_vec())
            .collect();
        let clustering = Clustering::new(blocks, k, n)?;
        let report = SolverReport::from_clustering(table, clustering, "exact")?;
        return Ok((report, stats));
    }

    // Every row copy in a block of non-identical rows pays at least one
    // star, so copies of patterns with multiplicity < k are a certified
    // lower bound; reaching it ends the search.
    let lower_bound: u64 = (0..counts.len())
        .filter(|&t| counts.count(t) < k)
        .map(|t| counts.count(t) as u64)
        .sum();

    let words = counts.len().div_ceil(64);
    let full_mask = {
        let mut mask = vec![u64::MAX; words];
        if !counts.len().is_multiple_of(64) {
            mask[words - 1] = (1u64 << (counts.len() % 64)) - 1;
        }
        mask
    };
    let coverage: Vec<Vec<u64>> = candidates
        .patterns
        .iter()
        .map(|p| {
            let mut mask = vec![0u64; words];
            for (t, row) in counts.patterns().iter().enumerate() {
                if matches_unchecked(row, p) {
                    mask[t / 64] |= 1 << (t % 64);
                }
            }
            mask
        })
        .collect();

    let mut best: Option<(SubsetAssignment, Vec<usize>)> = None;
    let mut best_cost = u64::MAX;
    // Subsets larger than n/k cannot give every open pattern k copies.
    let max_size = (n / k).min(candidates.len());
    'search: for size in 1..=max_size {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            stats.subsets_visited += 1;
            if stats.subsets_visited > budget {
                return Err(Error::Resource(format!(
                    "subset budget {budget} exceeded over {} candidate patterns",
                    candidates.len()
                )));
            }
            let covered = combo.iter().fold(vec![0u64; words], |mut acc, &c| {
                for (a, w) in acc.iter_mut().zip(&coverage[c]) {
                    *a |= w;
                }
                acc
            });
            if covered == full_mask {
                let open: Vec<AnonPattern> =
                    combo.iter().map(|&c| candidates.patterns[c].clone()).collect();
                stats.subsets_solved += 1;
                if let Some(assignment) = solve_subset(&open, &counts, k)? {
                    if assignment.cost < best_cost {
                        best_cost = assignment.cost;
                        best = Some((assignment, combo.clone()));
                        if best_cost == lower_bound {
                            break 'search;
                        }
                    }
                }
            }
            if !next_combination(&mut combo, candidates.len()) {
                break;
            }
        }
    }

    let Some((assignment, winner)) = best else {
        return Err(Error::Internal(
            "no feasible subset found although the all-star pattern is a candidate".into(),
        ));
    };
    let open: Vec<AnonPattern> = winner
        .iter()
        .map(|&c| candidates.patterns[c].clone())
        .collect();
    let report = assignment_to_report(table, &counts, &open, &assignment, k)?;
    Ok((report, stats))
}

/// Expands flows into concrete row indices: each open pattern becomes one
/// block, each distinct row's copies dealt out in ascending index order.
fn assignment_to_report(
    table: &Table,
    counts: &RowCounts,
    open: &[AnonPattern],
    assignment: &SubsetAssignment,
    k: usize,
) -> Result<SolverReport> {
    let mut copies = vec![vec![0usize; counts.len()]; open.len()];
    for &(p, t, c) in &assignment.flows {
        copies[p][t] = c;
    }
    let mut cursors = vec![0usize; counts.len()];
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); open.len()];
    for t in 0..counts.len() {
        for (p, block) in blocks.iter_mut().enumerate() {
            let c = copies[p][t];
            let occ = counts.occurrences(t);
            block.extend_from_slice(&occ[cursors[t]..cursors[t] + c]);
            cursors[t] += c;
        }
    }

    let mut grid: Vec<Option<AnonPattern>> = vec![None; table.row_count()];
    let mut cost = 0u64;
    for (p, block) in blocks.iter().enumerate() {
        cost += open[p].cost() * block.len() as u64;
        for &i in block {
            grid[i] = Some(open[p].clone());
        }
    }
    if cost != assignment.cost {
        return Err(Error::Internal(format!(
            "expanded cost {cost} differs from assignment objective {}",
            assignment.cost
        )));
    }
    let anonymized = grid
        .into_iter()
        .map(|g| g.ok_or_else(|| Error::Internal("a row was left unassigned".into())))
        .collect::<Result<Vec<_>>>()?;
    let clustering = Clustering::new(blocks, k, table.row_count())?;
    Ok(SolverReport {
        cost,
        anonymized,
        clustering,
        solver: "exact".to_owned(),
    })
}
