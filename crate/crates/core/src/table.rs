//! Tables, patterns, clusterings, the two equivalent cost views, and
//! solution verification.
//!
//! A table is an n×m grid of symbols. A solution suppresses cells (writes
//! `*`) so that every output row is identical to at least k−1 others. The
//! cost of a solution is the number of suppressed cells; equivalently, for
//! a partition of the rows into blocks of size ≥ k, each row pays the
//! number of columns on which its block disagrees, and the total cost is
//! Σ |Sᵢ|·a(Sᵢ).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The reserved suppression mark. Never a valid [`Symbol`].
pub const STAR: &str = "*";

/// An interned symbol token. Equality is exact string equality.
///
/// Tokens are nonempty, contain no comma or line break (so the CSV forms
/// are unambiguous), and are never the reserved `*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(token: impl AsRef<str>) -> Result<Symbol> {
        let token = token.as_ref();
        if token.is_empty() {
            return Err(Error::Argument("symbol token may not be empty".into()));
        }
        if token == STAR {
            return Err(Error::Argument(
                "the token \"*\" is reserved for suppression".into(),
            ));
        }
        if token.contains(',') || token.contains('\n') || token.contains('\r') {
            return Err(Error::Argument(format!(
                "symbol token {token:?} contains a comma or line break"
            )));
        }
        Ok(Symbol(Arc::from(token)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// One entry of an anonymization pattern: a concrete symbol or the star.
///
/// Stars order before symbols, so pattern ordering agrees with ordering
/// the rendered token lists (`*` precedes every valid token).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Cell {
    Star,
    Sym(Symbol),
}

impl Cell {
    pub fn is_star(&self) -> bool {
        matches!(self, Cell::Star)
    }

    pub fn token(&self) -> &str {
        match self {
            Cell::Star => STAR,
            Cell::Sym(s) => s.as_str(),
        }
    }
}

/// A row pattern: an m-vector of symbols, no stars.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RowPattern(Vec<Symbol>);

impl RowPattern {
    pub fn new(entries: Vec<Symbol>) -> Result<RowPattern> {
        if entries.is_empty() {
            return Err(Error::Argument("row pattern may not be empty".into()));
        }
        Ok(RowPattern(entries))
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<RowPattern> {
        RowPattern::new(tokens.iter().map(Symbol::new).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.0
    }

    pub fn tokens(&self) -> Vec<String> {
        self.0.iter().map(|s| s.as_str().to_owned()).collect()
    }
}

/// An anonymization pattern: an m-vector over symbols and stars.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AnonPattern(Vec<Cell>);

impl AnonPattern {
    pub fn new(entries: Vec<Cell>) -> Result<AnonPattern> {
        if entries.is_empty() {
            return Err(Error::Argument("pattern may not be empty".into()));
        }
        Ok(AnonPattern(entries))
    }

    /// Parses a token list where `*` means a suppressed column.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<AnonPattern> {
        let cells = tokens
            .iter()
            .map(|t| {
                if t.as_ref() == STAR {
                    Ok(Cell::Star)
                } else {
                    Symbol::new(t).map(Cell::Sym)
                }
            })
            .collect::<Result<_>>()?;
        AnonPattern::new(cells)
    }

    /// The exact pattern of a row: no columns suppressed.
    pub fn from_row(row: &RowPattern) -> AnonPattern {
        AnonPattern(row.entries().iter().cloned().map(Cell::Sym).collect())
    }

    /// Copies `row` with the columns in `starred` suppressed.
    pub fn starring(row: &RowPattern, starred: &[bool]) -> Result<AnonPattern> {
        if starred.len() != row.len() {
            return Err(Error::Dimension(format!(
                "row has {} columns, star mask has {}",
                row.len(),
                starred.len()
            )));
        }
        let cells = row
            .entries()
            .iter()
            .zip(starred)
            .map(|(s, &star)| if star { Cell::Star } else { Cell::Sym(s.clone()) })
            .collect();
        Ok(AnonPattern(cells))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Cell] {
        &self.0
    }

    /// Number of suppressed columns.
    pub fn cost(&self) -> u64 {
        self.0.iter().filter(|c| c.is_star()).count() as u64
    }

    pub fn tokens(&self) -> Vec<String> {
        self.0.iter().map(|c| c.token().to_owned()).collect()
    }

    pub fn render(&self) -> String {
        self.tokens().join(",")
    }
}

/// The problem input: an n×m grid of symbols with no suppression marks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Table {
    rows: Vec<RowPattern>,
    columns: usize,
}

impl Table {
    pub fn new(rows: Vec<RowPattern>) -> Result<Table> {
        let Some(first) = rows.first() else {
            return Err(Error::Argument("table must have at least one row".into()));
        };
        let columns = first.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != columns {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {columns}",
                    row.len()
                )));
            }
        }
        Ok(Table { rows, columns })
    }

    pub fn from_tokens<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Table> {
        Table::new(
            rows.iter()
                .map(|r| RowPattern::from_tokens(r))
                .collect::<Result<_>>()?,
        )
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> &[RowPattern] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RowPattern {
        &self.rows[i]
    }

    /// The distinct symbols of the table, sorted.
    pub fn alphabet(&self) -> Vec<Symbol> {
        let mut set: Vec<Symbol> = self
            .rows
            .iter()
            .flat_map(|r| r.entries().iter().cloned())
            .collect();
        set.sort();
        set.dedup();
        set
    }
}

/// A partition of the row indices into blocks of size ≥ k.
///
/// Blocks are stored in canonical form: indices sorted within each block,
/// blocks ordered by their smallest index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clustering {
    blocks: Vec<Vec<usize>>,
    k: usize,
    n: usize,
}

impl Clustering {
    pub fn new(blocks: Vec<Vec<usize>>, k: usize, n: usize) -> Result<Clustering> {
        if k == 0 {
            return Err(Error::InvalidClustering(
                "privacy parameter k must be at least 1".into(),
            ));
        }
        let mut seen = vec![false; n];
        let mut blocks: Vec<Vec<usize>> = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidClustering(format!("block {b} is empty")));
            }
            if block.len() < k {
                return Err(Error::InvalidClustering(format!(
                    "block {b} has size {} < k={k}",
                    block.len()
                )));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i >= n {
                    return Err(Error::InvalidClustering(format!(
                        "row index {i} out of range for {n} rows"
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidClustering(format!(
                        "row {i} appears in more than one block"
                    )));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidClustering(format!(
                "row {missing} is not assigned to any block"
            )));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Clustering { blocks, k, n })
    }

    /// Rebuilds a clustering from a per-row block-id vector.
    pub fn from_row_ids(ids: &[usize], k: usize) -> Result<Clustering> {
        let mut by_id: HashMap<usize, Vec<usize>> = HashMap::new();
        for (row, &id) in ids.iter().enumerate() {
            by_id.entry(id).or_default().push(row);
        }
        Clustering::new(by_id.into_values().collect(), k, ids.len())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn row_count(&self) -> usize {
        self.n
    }

    /// Per-row block ids, numbered by first appearance; the stable
    /// serialization of a clustering.
    pub fn to_row_ids(&self) -> Vec<usize> {
        let mut ids = vec![0usize; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                ids[i] = b;
            }
        }
        ids
    }

    fn check_against(&self, table: &Table) -> Result<()> {
        if self.n != table.row_count() {
            return Err(Error::InvalidClustering(format!(
                "clustering covers {} rows, table has {}",
                self.n,
                table.row_count()
            )));
        }
        Ok(())
    }
}

/// What every solver returns: the cost, the anonymized grid, the
/// clustering behind it, and which solver produced it.
#[derive(Clone, Debug)]
pub struct SolverReport {
    pub cost: u64,
    pub anonymized: Vec<AnonPattern>,
    pub clustering: Clustering,
    pub solver: String,
}

impl SolverReport {
    /// Builds a report from a clustering by applying it to the table.
    pub fn from_clustering(table: &Table, clustering: Clustering, solver: &str) -> Result<SolverReport> {
        let anonymized = apply_clustering(table, &clustering)?;
        let cost = clustering_cost(table, &clustering)?;
        Ok(SolverReport {
            cost,
            anonymized,
            clustering,
            solver: solver.to_owned(),
        })
    }
}

/// Does row `t` match pattern `p`? True iff they agree on every column
/// that `p` does not suppress.
pub fn matches(t: &RowPattern, p: &AnonPattern) -> Result<bool> {
    if t.len() != p.len() {
        return Err(Error::Dimension(format!(
            "row has {} columns, pattern has {}",
            t.len(),
            p.len()
        )));
    }
    Ok(matches_unchecked(t, p))
}

pub(crate) fn matches_unchecked(t: &RowPattern, p: &AnonPattern) -> bool {
    t.entries()
        .iter()
        .zip(p.entries())
        .all(|(s, c)| match c {
            Cell::Star => true,
            Cell::Sym(ps) => ps == s,
        })
}

/// a(S): the number of columns on which the rows of `block` are not all
/// identical.
pub fn bad_column_count(table: &Table, block: &[usize]) -> Result<usize> {
    Ok(closure_of_block(table, block)?.cost() as usize)
}

/// The canonical pattern of a set of rows: the common symbol where all
/// rows agree, a star where they do not.
pub fn closure<'a, I>(rows: I) -> Result<AnonPattern>
where
    I: IntoIterator<Item = &'a RowPattern>,
{
    let mut iter = rows.into_iter();
    let Some(first) = iter.next() else {
        return Err(Error::Argument("closure of an empty row set".into()));
    };
    let mut cells: Vec<Cell> = first.entries().iter().cloned().map(Cell::Sym).collect();
    for row in iter {
        if row.len() != cells.len() {
            return Err(Error::Dimension(format!(
                "closure over rows of lengths {} and {}",
                cells.len(),
                row.len()
            )));
        }
        for (cell, sym) in cells.iter_mut().zip(row.entries()) {
            if let Cell::Sym(s) = cell {
                if s != sym {
                    *cell = Cell::Star;
                }
            }
        }
    }
    AnonPattern::new(cells)
}

pub(crate) fn closure_of_block(table: &Table, block: &[usize]) -> Result<AnonPattern> {
    if block.is_empty() {
        return Err(Error::Argument("empty block".into()));
    }
    if let Some(&bad) = block.iter().find(|&&i| i >= table.row_count()) {
        return Err(Error::Argument(format!(
            "row index {bad} out of range for {} rows",
            table.row_count()
        )));
    }
    closure(block.iter().map(|&i| table.row(i)))
}

/// Σ over blocks of |Sᵢ|·a(Sᵢ): the partition view of the solution cost.
pub fn clustering_cost(table: &Table, c: &Clustering) -> Result<u64> {
    c.check_against(table)?;
    let mut total = 0u64;
    for block in c.blocks() {
        total += block.len() as u64 * bad_column_count(table, block)? as u64;
    }
    Ok(total)
}

/// Applies a clustering: within each block every bad column becomes `*`
/// in all of the block's rows; row order is preserved.
pub fn apply_clustering(table: &Table, c: &Clustering) -> Result<Vec<AnonPattern>> {
    c.check_against(table)?;
    let mut grid: Vec<Option<AnonPattern>> = vec![None; table.row_count()];
    for block in c.blocks() {
        let pattern = closure_of_block(table, block)?;
        for &i in block {
            grid[i] = Some(pattern.clone());
        }
    }
    Ok(grid.into_iter().map(|p| p.expect("clustering covers all rows")).collect())
}

/// Checks that `output` is a legal k-anonymization of `input` and returns
/// its cost (the number of stars).
///
/// Two checks: every output cell equals the input cell or is a star, and
/// grouping output rows by exact equality leaves no group smaller than k.
pub fn verify_solution(input: &Table, output: &[AnonPattern], k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::Argument("privacy parameter k must be at least 1".into()));
    }
    if output.len() != input.row_count() {
        return Err(Error::Dimension(format!(
            "output has {} rows, input has {}",
            output.len(),
            input.row_count()
        )));
    }
    let mut stars = 0u64;
    for (i, (row, out)) in input.rows().iter().zip(output).enumerate() {
        if out.len() != input.column_count() {
            return Err(Error::Dimension(format!(
                "output row {i} has {} columns, expected {}",
                out.len(),
                input.column_count()
            )));
        }
        for (j, (sym, cell)) in row.entries().iter().zip(out.entries()).enumerate() {
            match cell {
                Cell::Star => stars += 1,
                Cell::Sym(s) if s == sym => {}
                Cell::Sym(s) => {
                    return Err(Error::Tamper {
                        row: i,
                        column: j,
                        expected: sym.as_str().to_owned(),
                        found: s.as_str().to_owned(),
                    });
                }
            }
        }
    }
    let mut groups: HashMap<&AnonPattern, usize> = HashMap::new();
    for out in output {
        *groups.entry(out).or_insert(0) += 1;
    }
    // Deterministic reporting: smallest offending group, then pattern order.
    let mut violations: Vec<(usize, &AnonPattern)> = groups
        .into_iter()
        .filter(|&(_, size)| size < k)
        .map(|(p, size)| (size, p))
        .collect();
    violations.sort();
    if let Some(&(size, pattern)) = violations.first() {
        return Err(Error::AnonymityViolation {
            pattern: pattern.render(),
            size,
            k,
        });
    }
    Ok(stars)
}
