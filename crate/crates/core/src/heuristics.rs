//! Baseline solvers: suppress-everything and greedy agglomerative
//! merging. Cheap, always feasible, never better than the exact solver.

use crate::error::{Error, Result};
use crate::table::{Cell, Clustering, SolverReport, Table};

/// One block holding every row. Costs n·m unless some column is globally
/// constant, in which case that column survives.
pub fn suppress_all(table: &Table, k: usize) -> Result<SolverReport> {
    let n = table.row_count();
    if k == 0 {
        return Err(Error::Argument("privacy parameter k must be at least 1".into()));
    }
    if n < k {
        return Err(Error::Infeasible(format!(
            "k exceeds row count (k={k}, n={n})"
        )));
    }
    let clustering = Clustering::new(vec![(0..n).collect()], k, n)?;
    SolverReport::from_clustering(table, clustering, "suppress-all")
}

/// Start from singletons and repeatedly merge the pair of blocks whose
/// merge increases Σ|Sᵢ|·a(Sᵢ) the least, until every block has size ≥ k.
/// Ties go to the lowest (block id, block id); a merged block keeps the
/// smaller id.
pub fn greedy_agglomerative(table: &Table, k: usize) -> Result<SolverReport> {
    let n = table.row_count();
    if k == 0 {
        return Err(Error::Argument("privacy parameter k must be at least 1".into()));
    }
    if n < k {
        return Err(Error::Infeasible(format!(
            "k exceeds row count (k={k}, n={n})"
        )));
    }

    struct Block {
        rows: Vec<usize>,
        // Per column: the common symbol position, or None once mixed.
        // Stored as the closure over the original rows.
        signature: Vec<Cell>,
    }
    impl Block {
        fn cost(&self) -> u64 {
            self.rows.len() as u64 * self.signature.iter().filter(|c| c.is_star()).count() as u64
        }
    }

    fn merged_signature(a: &[Cell], b: &[Cell]) -> Vec<Cell> {
        a.iter()
            .zip(b)
            .map(|(x, y)| if x == y { x.clone() } else { Cell::Star })
            .collect()
    }

    let mut blocks: Vec<Option<Block>> = table
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            Some(Block {
                rows: vec![i],
                signature: row.entries().iter().cloned().map(Cell::Sym).collect(),
            })
        })
        .collect();

    loop {
        let undersized = blocks
            .iter()
            .flatten()
            .any(|b| b.rows.len() < k);
        if !undersized {
            break;
        }
        let live: Vec<usize> = (0..blocks.len()).filter(|&i| blocks[i].is_some()).collect();
        let mut best: Option<(u64, usize, usize)> = None;
        for (pos, &i) in live.iter().enumerate() {
            let a = blocks[i].as_ref().unwrap();
            for &j in &live[pos + 1..] {
                let b = blocks[j].as_ref().unwrap();
                let sig = merged_signature(&a.signature, &b.signature);
                let stars = sig.iter().filter(|c| c.is_star()).count() as u64;
                let merged_cost = (a.rows.len() + b.rows.len()) as u64 * stars;
                let delta = merged_cost - a.cost() - b.cost();
                if best.is_none_or(|(d, bi, bj)| (delta, i, j) < (d, bi, bj)) {
                    best = Some((delta, i, j));
                }
            }
        }
        let (_, i, j) = best.expect("an undersized block implies at least two blocks");
        let absorbed = blocks[j].take().expect("chosen block is live");
        let keeper = blocks[i].as_mut().expect("chosen block is live");
        keeper.signature = merged_signature(&keeper.signature, &absorbed.signature);
        keeper.rows.extend(absorbed.rows);
    }

    let clustering = Clustering::new(
        blocks.into_iter().flatten().map(|b| b.rows).collect(),
        k,
        n,
    )?;
    SolverReport::from_clustering(table, clustering, "greedy")
}
