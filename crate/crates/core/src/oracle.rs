//! Ground-truth optimal k-anonymization by exhaustive partition search.
//!
//! Enumerates every partition of the row set via restricted-growth
//! assignment (row i may open a new block only if it is the next unused
//! block id), pruning branches whose accumulated cost already reaches the
//! incumbent and branches that can no longer fill every open block to
//! size k. Intended for cross-checking the other solvers on small
//! instances, not for scale.

use crate::error::{Error, Result};
use crate::table::{Clustering, SolverReport, Table};

#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    /// Hard cap on the number of rows accepted.
    pub max_rows: usize,
    /// Safety valve: cap on complete partitions examined.
    pub max_partitions: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_rows: 10,
            max_partitions: 10_000_000,
        }
    }
}

struct Search<'a> {
    table: &'a Table,
    k: usize,
    limits: OracleLimits,
    assignment: Vec<usize>,
    block_sizes: Vec<usize>,
    block_costs: Vec<u64>,
    partial_cost: u64,
    examined: u64,
    best_cost: u64,
    best_assignment: Option<Vec<usize>>,
}

/// Minimum-cost clustering among all partitions of the rows into blocks
/// of size ≥ k. Ties go to the first partition in enumeration order.
pub fn optimal_by_partition(table: &Table, k: usize, limits: OracleLimits) -> Result<SolverReport> {
    let n = table.row_count();
    if k == 0 {
        return Err(Error::Argument("privacy parameter k must be at least 1".into()));
    }
    if n < k {
        return Err(Error::Infeasible(format!(
            "k exceeds row count (k={k}, n={n})"
        )));
    }
    if n > limits.max_rows {
        return Err(Error::Resource(format!(
            "oracle accepts at most {} rows, table has {n}",
            limits.max_rows
        )));
    }

    let mut search = Search {
        table,
        k,
        limits,
        assignment: vec![usize::MAX; n],
        block_sizes: vec![0; n],
        block_costs: vec![0; n],
        partial_cost: 0,
        examined: 0,
        best_cost: u64::MAX,
        best_assignment: None,
    };
    search.descend(0, 0)?;

    let ids = search
        .best_assignment
        .ok_or_else(|| Error::Internal("partition search found no feasible partition".into()))?;
    let clustering = Clustering::from_row_ids(&ids, k)?;
    SolverReport::from_clustering(table, clustering, "bruteforce")
}

impl Search<'_> {
    fn descend(&mut self, row: usize, open_blocks: usize) -> Result<()> {
        let n = self.table.row_count();
        if row == n {
            if self.block_sizes[..open_blocks].iter().any(|&s| s < self.k) {
                return Ok(());
            }
            self.examined += 1;
            if self.examined > self.limits.max_partitions {
                return Err(Error::Resource(format!(
                    "partition cap of {} exceeded",
                    self.limits.max_partitions
                )));
            }
            if self.partial_cost < self.best_cost {
                self.best_cost = self.partial_cost;
                self.best_assignment = Some(self.assignment.clone());
            }
            return Ok(());
        }

        // A new block is allowed only in the next unused slot.
        let choices = if open_blocks < n { open_blocks + 1 } else { open_blocks };
        for block in 0..choices {
            let old_cost = self.block_costs[block];
            let new_cost = self.cost_with_row(block, row);
            let delta = new_cost - old_cost;
            if self.partial_cost + delta >= self.best_cost {
                continue;
            }

            self.assignment[row] = block;
            self.block_sizes[block] += 1;
            self.block_costs[block] = new_cost;
            self.partial_cost += delta;

            if self.completable(row + 1, open_blocks.max(block + 1)) {
                self.descend(row + 1, open_blocks.max(block + 1))?;
            }

            self.partial_cost -= delta;
            self.block_costs[block] = old_cost;
            self.block_sizes[block] -= 1;
            self.assignment[row] = usize::MAX;
        }
        Ok(())
    }

    /// Can the remaining rows still fill every open block to size k?
    fn completable(&self, next_row: usize, open_blocks: usize) -> bool {
        let remaining = self.table.row_count() - next_row;
        let deficit: usize = self.block_sizes[..open_blocks]
            .iter()
            .map(|&s| self.k.saturating_sub(s))
            .sum();
        deficit <= remaining
    }

    /// |S ∪ {row}| · a(S ∪ {row}) for the block as currently assigned.
    fn cost_with_row(&self, block: usize, row: usize) -> u64 {
        let m = self.table.column_count();
        let candidate = self.table.row(row);
        let mut bad = vec![false; m];
        let mut size = 1u64;
        for r in 0..row {
            if self.assignment[r] != block {
                continue;
            }
            size += 1;
            for (j, flag) in bad.iter_mut().enumerate() {
                if !*flag && self.table.row(r).entries()[j] != candidate.entries()[j] {
                    *flag = true;
                }
            }
        }
        size * bad.iter().filter(|&&b| b).count() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Table;

    fn worked_example() -> Table {
        Table::from_tokens(&[
            vec!["x", "a", "b"],
            vec!["z", "c", "d"],
            vec!["y", "a", "b"],
            vec!["z", "c", "e"],
        ])
        .unwrap()
    }

    #[test]
    fn worked_example_optimum_is_four() {
        let report = optimal_by_partition(&worked_example(), 2, OracleLimits::default()).unwrap();
        assert_eq!(report.cost, 4);
        assert_eq!(
            crate::table::verify_solution(&worked_example(), &report.anonymized, 2).unwrap(),
            4
        );
    }

    #[test]
    fn k1_is_free() {
        let report = optimal_by_partition(&worked_example(), 1, OracleLimits::default()).unwrap();
        assert_eq!(report.cost, 0);
    }

    #[test]
    fn three_distinct_rows_single_column() {
        let t = Table::from_tokens(&[vec!["a"], vec!["b"], vec!["c"]]).unwrap();
        let report = optimal_by_partition(&t, 3, OracleLimits::default()).unwrap();
        assert_eq!(report.cost, 3);
        assert_eq!(report.clustering.blocks().len(), 1);
    }

    #[test]
    fn infeasible_when_k_exceeds_rows() {
        let t = Table::from_tokens(&[vec!["a"], vec!["b"]]).unwrap();
        assert!(matches!(
            optimal_by_partition(&t, 3, OracleLimits::default()),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn row_cap_is_enforced() {
        let rows: Vec<Vec<&str>> = (0..5).map(|_| vec!["a"]).collect();
        let t = Table::from_tokens(&rows).unwrap();
        let limits = OracleLimits { max_rows: 4, ..OracleLimits::default() };
        assert!(matches!(
            optimal_by_partition(&t, 2, limits),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn partition_cap_is_enforced() {
        let rows: Vec<Vec<&str>> = (0..8).map(|i| vec![if i % 2 == 0 { "a" } else { "b" }]).collect();
        let t = Table::from_tokens(&rows).unwrap();
        let limits = OracleLimits { max_rows: 10, max_partitions: 3 };
        assert!(matches!(
            optimal_by_partition(&t, 1, limits),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn cost_monotone_in_k() {
        let t = worked_example();
        let mut prev = 0;
        for k in 1..=4 {
            let cost = optimal_by_partition(&t, k, OracleLimits::default()).unwrap().cost;
            assert!(cost >= prev, "cost dropped from {prev} to {cost} at k={k}");
            prev = cost;
        }
    }
}
