//! Suppression-based k-anonymization toolkit.
//!
//! The problem: given an n×m table of symbols, suppress a minimum number
//! of cells (write `*`) so that every row of the result is identical to
//! at least k−1 other rows. Equivalently, partition the rows into blocks
//! of size ≥ k; each row pays one star per column on which its block
//! disagrees.
//!
//! The crate provides:
//!
//! - [`table`] — tables, patterns, clusterings, both cost views, and
//!   solution verification;
//! - [`exact`] — an exact solver that enumerates candidate anonymization
//!   patterns and solves each open-pattern subset as a min-cost flow
//!   (polynomial for fixed column count and alphabet size);
//! - [`oracle`] — ground-truth optimum by exhaustive partition search,
//!   for cross-checking on small instances;
//! - [`heuristics`] — suppress-all and greedy agglomerative baselines;
//! - [`reduction`] — an executable hardness gadget mapping 3-regular
//!   graphs to 3-column tables at k = 7, with both directions of the
//!   cover ↔ solution correspondence;
//! - [`io`] — the CSV, clustering, graph, and role-sidecar text formats;
//! - [`generate`] — seeded random instances.

pub mod error;
pub mod exact;
pub mod generate;
pub mod heuristics;
pub mod io;
pub mod oracle;
pub mod reduction;
pub mod table;
mod util;

pub use error::{Error, Result};
pub use table::{
    apply_clustering, bad_column_count, closure, clustering_cost, matches, verify_solution,
    AnonPattern, Cell, Clustering, RowPattern, SolverReport, Symbol, Table, STAR,
};
