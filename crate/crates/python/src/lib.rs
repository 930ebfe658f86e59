//! Python bindings for the kanon toolkit.
//!
//! Tables and anonymized grids cross the boundary as lists of token
//! lists (`*` marks a suppressed cell), clusterings as per-row block-id
//! lists, graphs as edge lists. Solvers are reached through a single
//! `solve(table, k, solver=..., budget=...)` entry point mirroring the
//! CLI names.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use kanon::error::Error;
use kanon::exact::solve_exact;
use kanon::heuristics::{greedy_agglomerative, suppress_all};
use kanon::oracle::{optimal_by_partition, OracleLimits};
use kanon::reduction;
use kanon::table;

fn to_py_err(err: Error) -> PyErr {
    match err {
        Error::Resource(_) | Error::Internal(_) | Error::Io(_) => {
            PyRuntimeError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn parse_grid(rows: &[Vec<String>]) -> PyResult<Vec<kanon::AnonPattern>> {
    rows.iter()
        .map(|r| kanon::AnonPattern::from_tokens(r).map_err(to_py_err))
        .collect()
}

fn grid_tokens(grid: &[kanon::AnonPattern]) -> Vec<Vec<String>> {
    grid.iter().map(|p| p.tokens()).collect()
}

/// An n×m table of symbols; the problem input. `*` is not a legal token.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Table {
    inner: kanon::Table,
}

#[pymethods]
impl Table {
    #[new]
    fn new(rows: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(Table {
            inner: kanon::Table::from_tokens(&rows).map_err(to_py_err)?,
        })
    }

    /// Parse the headerless CSV form.
    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        Ok(Table {
            inner: kanon::io::parse_table(text).map_err(to_py_err)?,
        })
    }

    fn to_csv(&self) -> String {
        kanon::io::table_to_csv(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.row_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.column_count()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.inner.rows().iter().map(|r| r.tokens()).collect()
    }

    fn alphabet(&self) -> Vec<String> {
        self.inner
            .alphabet()
            .iter()
            .map(|s| s.as_str().to_owned())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Table(n={}, m={})", self.inner.row_count(), self.inner.column_count())
    }
}

/// A solver's answer: cost, anonymized grid, clustering, provenance.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct SolverReport {
    #[pyo3(get)]
    cost: u64,
    #[pyo3(get)]
    anonymized: Vec<Vec<String>>,
    /// Per-row block ids, numbered by first appearance.
    #[pyo3(get)]
    clustering: Vec<usize>,
    /// Row-index blocks of the clustering.
    #[pyo3(get)]
    blocks: Vec<Vec<usize>>,
    #[pyo3(get)]
    solver: String,
}

#[pymethods]
impl SolverReport {
    fn __repr__(&self) -> String {
        format!("SolverReport(cost={}, solver={:?})", self.cost, self.solver)
    }
}

impl From<table::SolverReport> for SolverReport {
    fn from(report: table::SolverReport) -> Self {
        SolverReport {
            cost: report.cost,
            anonymized: grid_tokens(&report.anonymized),
            clustering: report.clustering.to_row_ids(),
            blocks: report.clustering.blocks().to_vec(),
            solver: report.solver,
        }
    }
}

/// A simple undirected graph on vertices 0..r−1.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: reduction::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Graph {
            inner: reduction::Graph::new(vertex_count, edges).map_err(to_py_err)?,
        })
    }

    /// Built-in test graphs: k4, k33, q3, petersen.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        reduction::Graph::named(name)
            .map(|inner| Graph { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown graph {name:?}")))
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(r={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// A hardness table built from a 3-regular graph, with role metadata.
#[pyclass]
struct ReductionTable {
    inner: reduction::ReductionTable,
}

#[pymethods]
impl ReductionTable {
    fn table(&self) -> Table {
        Table {
            inner: self.inner.table().clone(),
        }
    }

    fn graph(&self) -> Graph {
        Graph {
            inner: self.inner.graph().clone(),
        }
    }

    /// (kind, owner) pairs in row order, using the sidecar tokens.
    fn roles(&self) -> Vec<(String, String)> {
        self.inner
            .roles()
            .iter()
            .map(|role| {
                let owner = match role.owner {
                    reduction::RoleOwner::Vertex(u) => format!("v{u}"),
                    reduction::RoleOwner::Edge(x, y) => format!("e{x}-{y}"),
                    reduction::RoleOwner::Dummy => "-".to_owned(),
                };
                (role.kind.token().to_owned(), owner)
            })
            .collect()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn special_symbols(&self) -> usize {
        self.inner.special_symbols()
    }

    #[getter]
    fn abc(&self) -> PyResult<u64> {
        reduction::abc(self.inner.graph()).map_err(to_py_err)
    }

    #[getter]
    fn num_rows(&self) -> usize {
        self.inner.table().row_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "ReductionTable(rows={}, r={}, k=7)",
            self.inner.table().row_count(),
            self.inner.graph().vertex_count()
        )
    }
}

/// Base/extra cost split of a verified reduction-table solution.
#[pyclass]
struct CostLedger {
    #[pyo3(get)]
    base: Vec<u64>,
    #[pyo3(get)]
    extra: Vec<u64>,
    #[pyo3(get)]
    total_extra: u64,
    #[pyo3(get)]
    abc: u64,
    #[pyo3(get)]
    actual_cost: u64,
}

/// Run one of the solvers: exact, bruteforce, greedy, or suppress-all.
#[pyfunction]
#[pyo3(signature = (table, k, solver="exact", budget=None))]
fn solve(table: &Table, k: usize, solver: &str, budget: Option<u64>) -> PyResult<SolverReport> {
    let report = match solver {
        "exact" => solve_exact(&table.inner, k, budget),
        "bruteforce" => optimal_by_partition(&table.inner, k, OracleLimits::default()),
        "greedy" => greedy_agglomerative(&table.inner, k),
        "suppress-all" => suppress_all(&table.inner, k),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown solver {other:?}; use exact, bruteforce, greedy, or suppress-all"
            )))
        }
    };
    report.map(SolverReport::from).map_err(to_py_err)
}

/// Check an anonymized grid against its input table; returns the cost.
#[pyfunction]
fn verify_solution(table: &Table, anonymized: Vec<Vec<String>>, k: usize) -> PyResult<u64> {
    let grid = parse_grid(&anonymized)?;
    table::verify_solution(&table.inner, &grid, k).map_err(to_py_err)
}

/// Does the row match the pattern (`*` entries ignored)?
#[pyfunction]
fn matches(row: Vec<String>, pattern: Vec<String>) -> PyResult<bool> {
    let row = kanon::RowPattern::from_tokens(&row).map_err(to_py_err)?;
    let pattern = kanon::AnonPattern::from_tokens(&pattern).map_err(to_py_err)?;
    table::matches(&row, &pattern).map_err(to_py_err)
}

/// Common symbol per agreeing column, `*` elsewhere.
#[pyfunction]
fn closure(rows: Vec<Vec<String>>) -> PyResult<Vec<String>> {
    let rows: Vec<kanon::RowPattern> = rows
        .iter()
        .map(|r| kanon::RowPattern::from_tokens(r).map_err(to_py_err))
        .collect::<PyResult<_>>()?;
    Ok(table::closure(rows.iter()).map_err(to_py_err)?.tokens())
}

/// Number of columns on which the rows of `block` disagree.
#[pyfunction]
fn bad_column_count(table: &Table, block: Vec<usize>) -> PyResult<usize> {
    table::bad_column_count(&table.inner, &block).map_err(to_py_err)
}

/// Σ |Sᵢ|·a(Sᵢ) of a clustering given as row-index blocks.
#[pyfunction]
fn clustering_cost(table: &Table, blocks: Vec<Vec<usize>>, k: usize) -> PyResult<u64> {
    let clustering =
        kanon::Clustering::new(blocks, k, table.inner.row_count()).map_err(to_py_err)?;
    table::clustering_cost(&table.inner, &clustering).map_err(to_py_err)
}

/// Suppress each block's bad columns; returns the anonymized grid.
#[pyfunction]
fn apply_clustering(table: &Table, blocks: Vec<Vec<usize>>, k: usize) -> PyResult<Vec<Vec<String>>> {
    let clustering =
        kanon::Clustering::new(blocks, k, table.inner.row_count()).map_err(to_py_err)?;
    let grid = table::apply_clustering(&table.inner, &clustering).map_err(to_py_err)?;
    Ok(grid_tokens(&grid))
}

/// Build the hardness table of a 3-regular graph (k is fixed to 7).
#[pyfunction]
fn reduce_graph(graph: &Graph) -> PyResult<ReductionTable> {
    Ok(ReductionTable {
        inner: reduction::reduce(&graph.inner).map_err(to_py_err)?,
    })
}

/// Aggregated base cost 27r + 2|E| + 14 of a 3-regular graph.
#[pyfunction]
fn abc(graph: &Graph) -> PyResult<u64> {
    reduction::abc(&graph.inner).map_err(to_py_err)
}

/// The canonical solution of extra cost |cover| built from a vertex
/// cover.
#[pyfunction]
fn cover_to_solution(rt: &ReductionTable, cover: Vec<usize>) -> PyResult<SolverReport> {
    reduction::cover_to_solution(&rt.inner, &cover)
        .map(SolverReport::from)
        .map_err(to_py_err)
}

/// Extract a vertex cover no larger than the solution's extra cost.
#[pyfunction]
fn solution_to_cover(rt: &ReductionTable, anonymized: Vec<Vec<String>>) -> PyResult<Vec<usize>> {
    let grid = parse_grid(&anonymized)?;
    reduction::solution_to_cover(&rt.inner, &grid).map_err(to_py_err)
}

/// Base/extra accounting of a verified reduction-table solution.
#[pyfunction]
fn extra_cost(rt: &ReductionTable, anonymized: Vec<Vec<String>>) -> PyResult<CostLedger> {
    let grid = parse_grid(&anonymized)?;
    let ledger = reduction::extra_cost(&rt.inner, &grid).map_err(to_py_err)?;
    Ok(CostLedger {
        base: ledger.base,
        extra: ledger.extra,
        total_extra: ledger.total_extra,
        abc: ledger.abc,
        actual_cost: ledger.actual_cost,
    })
}

/// Minimum vertex cover by subset enumeration (small graphs only).
#[pyfunction]
#[pyo3(signature = (graph, max_vertices=16))]
fn min_vertex_cover(graph: &Graph, max_vertices: usize) -> PyResult<Vec<usize>> {
    reduction::min_vertex_cover(&graph.inner, max_vertices).map_err(to_py_err)
}

/// Seeded uniform random table over `sigma` symbols.
#[pyfunction]
fn generate_table(seed: u64, n: usize, m: usize, sigma: usize) -> PyResult<Table> {
    Ok(Table {
        inner: kanon::generate::generate_table(seed, n, m, sigma).map_err(to_py_err)?,
    })
}

#[pymodule]
fn kanon_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Table>()?;
    m.add_class::<SolverReport>()?;
    m.add_class::<Graph>()?;
    m.add_class::<ReductionTable>()?;
    m.add_class::<CostLedger>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify_solution, m)?)?;
    m.add_function(wrap_pyfunction!(matches, m)?)?;
    m.add_function(wrap_pyfunction!(closure, m)?)?;
    m.add_function(wrap_pyfunction!(bad_column_count, m)?)?;
    m.add_function(wrap_pyfunction!(clustering_cost, m)?)?;
    m.add_function(wrap_pyfunction!(apply_clustering, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_graph, m)?)?;
    m.add_function(wrap_pyfunction!(abc, m)?)?;
    m.add_function(wrap_pyfunction!(cover_to_solution, m)?)?;
    m.add_function(wrap_pyfunction!(solution_to_cover, m)?)?;
    m.add_function(wrap_pyfunction!(extra_cost, m)?)?;
    m.add_function(wrap_pyfunction!(min_vertex_cover, m)?)?;
    m.add_function(wrap_pyfunction!(generate_table, m)?)?;
    m.add("REDUCTION_K", reduction::REDUCTION_K)?;
    m.add("STAR", kanon::STAR)?;
    Ok(())
}
