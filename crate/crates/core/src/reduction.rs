//! The vertex-cover hardness gadget: builds a 3-column table from a
//! 3-regular graph so that minimum-cost 7-anonymizations and minimum
//! vertex covers translate into each other.
//!
//! Per vertex u the table carries 20 rows: six ⟨0,u,u⟩, one critical
//! ⟨?,u,u⟩, seven ⟨?,u,?⟩, three ⟨0,u,Z⟩, three ⟨0,Z,u⟩. Per edge (x,y)
//! it carries ⟨0,x,y⟩ and ⟨0,y,x⟩, and it closes with seven ⟨0,?,Z⟩ and
//! seven ⟨0,Z,?⟩ dummies. Every `?` is a fresh special symbol occurring
//! exactly once in the whole table. Each row must suppress at least its
//! base cost (2 for ⟨?,u,?⟩ rows, 1 otherwise); the cost of any feasible
//! solution is the aggregated base cost 27r + 2|E| + 14 plus a
//! nonnegative extra, and extra cost t is achievable exactly when the
//! graph has a vertex cover of size t.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::table::{AnonPattern, Clustering, RowPattern, SolverReport, Symbol, Table};
use crate::util::next_combination;

/// The privacy parameter of every reduction table. Fixed by the
/// construction; callers cannot override it.
pub const REDUCTION_K: usize = 7;

const ZERO: &str = "0";
const GUARD: &str = "Z";

/// A simple undirected graph on vertices 0..r−1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Validation(format!("loop at vertex {a}")));
            }
            let (u, v) = (a.min(b), a.max(b));
            if v >= vertex_count {
                return Err(Error::Validation(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{vertex_count}"
                )));
            }
            normalized.push((u, v));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            let dup = normalized.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
            return Err(Error::Validation(format!(
                "duplicate edge ({}, {})",
                dup.0, dup.1
            )));
        }
        Ok(Graph {
            vertex_count,
            edges: normalized,
        })
    }

    /// The built-in test graphs: k4, k33, q3, petersen.
    pub fn named(name: &str) -> Option<Graph> {
        let (r, edges): (usize, Vec<(usize, usize)>) = match name {
            "k4" => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            "k33" => (
                6,
                vec![
                    (0, 3),
                    (0, 4),
                    (0, 5),
                    (1, 3),
                    (1, 4),
                    (1, 5),
                    (2, 3),
                    (2, 4),
                    (2, 5),
                ],
            ),
            // The 3-cube: vertices are bit strings, edges flip one bit.
            "q3" => (
                8,
                vec![
                    (0, 1),
                    (0, 2),
                    (0, 4),
                    (1, 3),
                    (1, 5),
                    (2, 3),
                    (2, 6),
                    (3, 7),
                    (4, 5),
                    (4, 6),
                    (5, 7),
                    (6, 7),
                ],
            ),
            "petersen" => (
                10,
                vec![
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (0, 4),
                    (0, 5),
                    (1, 6),
                    (2, 7),
                    (3, 8),
                    (4, 9),
                    (5, 7),
                    (5, 8),
                    (6, 8),
                    (6, 9),
                    (7, 9),
                ],
            ),
            _ => return None,
        };
        Some(Graph::new(r, edges).expect("built-in graphs are valid"))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(x, y)| x == v || y == v).count()
    }

    /// Errors with the offending vertex unless every degree is exactly 3.
    pub fn require_three_regular(&self) -> Result<()> {
        if self.vertex_count == 0 {
            return Err(Error::Validation("graph has no vertices".into()));
        }
        let mut degrees = vec![0usize; self.vertex_count];
        for &(u, v) in &self.edges {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        if let Some(v) = degrees.iter().position(|&d| d != 3) {
            return Err(Error::Validation(format!(
                "vertex {v} has degree {}, expected 3",
                degrees[v]
            )));
        }
        Ok(())
    }

    /// The first edge not touched by `set`, if any.
    pub fn uncovered_edge(&self, set: &BTreeSet<usize>) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .find(|&(u, v)| !set.contains(&u) && !set.contains(&v))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RoleKind {
    VertexA,
    Critical,
    VertexC,
    VertexD,
    VertexE,
    EdgeXY,
    EdgeYX,
    DummyA,
    DummyB,
}

impl RoleKind {
    pub fn token(self) -> &'static str {
        match self {
            RoleKind::VertexA => "A",
            RoleKind::Critical => "CRIT",
            RoleKind::VertexC => "C",
            RoleKind::VertexD => "D",
            RoleKind::VertexE => "E",
            RoleKind::EdgeXY => "EXY",
            RoleKind::EdgeYX => "EYX",
            RoleKind::DummyA => "DA",
            RoleKind::DummyB => "DB",
        }
    }

    pub fn from_token(token: &str) -> Option<RoleKind> {
        Some(match token {
            "A" => RoleKind::VertexA,
            "CRIT" => RoleKind::Critical,
            "C" => RoleKind::VertexC,
            "D" => RoleKind::VertexD,
            "E" => RoleKind::VertexE,
            "EXY" => RoleKind::EdgeXY,
            "EYX" => RoleKind::EdgeYX,
            "DA" => RoleKind::DummyA,
            "DB" => RoleKind::DummyB,
            _ => return None,
        })
    }

    /// The unavoidable per-row cost: 2 for ⟨?,u,?⟩ rows, 1 otherwise.
    pub fn base_cost(self) -> u64 {
        match self {
            RoleKind::VertexC => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RoleOwner {
    Vertex(usize),
    Edge(usize, usize),
    Dummy,
}

/// Which construction rule emitted a row and on whose behalf.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RowRole {
    pub kind: RoleKind,
    pub owner: RoleOwner,
}

/// A table produced by [`reduce`], with per-row role metadata and the
/// source graph.
#[derive(Clone, Debug)]
pub struct ReductionTable {
    table: Table,
    roles: Vec<RowRole>,
    graph: Graph,
    special_symbols: usize,
}

impl ReductionTable {
    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn roles(&self) -> &[RowRole] {
        &self.roles
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of distinct special symbols in the table: 15r + 14.
    pub fn special_symbols(&self) -> usize {
        self.special_symbols
    }

    pub fn k(&self) -> usize {
        REDUCTION_K
    }

    /// Rebuilds a reduction table from a table and its role sidecar,
    /// revalidating the whole construction: role counts per vertex and
    /// edge, row shapes, the literal constants, and single occurrence of
    /// every special symbol.
    pub fn from_parts(table: Table, roles: Vec<RowRole>) -> Result<ReductionTable> {
        if roles.len() != table.row_count() {
            return Err(Error::Validation(format!(
                "{} roles for {} rows",
                roles.len(),
                table.row_count()
            )));
        }
        if table.column_count() != 3 {
            return Err(Error::Validation(format!(
                "reduction tables have 3 columns, found {}",
                table.column_count()
            )));
        }

        // Vertex set and per-vertex role counts.
        let mut per_vertex: BTreeMap<usize, [usize; 5]> = BTreeMap::new();
        let mut per_edge: BTreeMap<(usize, usize), [usize; 2]> = BTreeMap::new();
        let mut dummies = [0usize; 2];
        for (i, role) in roles.iter().enumerate() {
            match (role.kind, role.owner) {
                (RoleKind::VertexA, RoleOwner::Vertex(u)) => per_vertex.entry(u).or_default()[0] += 1,
                (RoleKind::Critical, RoleOwner::Vertex(u)) => per_vertex.entry(u).or_default()[1] += 1,
                (RoleKind::VertexC, RoleOwner::Vertex(u)) => per_vertex.entry(u).or_default()[2] += 1,
                (RoleKind::VertexD, RoleOwner::Vertex(u)) => per_vertex.entry(u).or_default()[3] += 1,
                (RoleKind::VertexE, RoleOwner::Vertex(u)) => per_vertex.entry(u).or_default()[4] += 1,
                (RoleKind::EdgeXY, RoleOwner::Edge(x, y)) if x < y => {
                    per_edge.entry((x, y)).or_default()[0] += 1
                }
                (RoleKind::EdgeYX, RoleOwner::Edge(x, y)) if x < y => {
                    per_edge.entry((x, y)).or_default()[1] += 1
                }
                (RoleKind::DummyA, RoleOwner::Dummy) => dummies[0] += 1,
                (RoleKind::DummyB, RoleOwner::Dummy) => dummies[1] += 1,
                (kind, owner) => {
                    return Err(Error::Validation(format!(
                        "row {i}: role {:?} cannot be owned by {:?}",
                        kind, owner
                    )));
                }
            }
        }
        let r = per_vertex.len();
        if per_vertex.keys().enumerate().any(|(i, &u)| i != u) {
            return Err(Error::Validation("vertex ids are not contiguous from 0".into()));
        }
        for (&u, counts) in &per_vertex {
            if *counts != [6, 1, 7, 3, 3] {
                return Err(Error::Validation(format!(
                    "vertex {u} has row counts {counts:?}, expected [6, 1, 7, 3, 3] for A/CRIT/C/D/E"
                )));
            }
        }
        for (&(x, y), counts) in &per_edge {
            if *counts != [1, 1] {
                return Err(Error::Validation(format!(
                    "edge ({x}, {y}) has row counts {counts:?}, expected one EXY and one EYX"
                )));
            }
        }
        if dummies != [7, 7] {
            return Err(Error::Validation(format!(
                "found {} DummyA and {} DummyB rows, expected 7 and 7",
                dummies[0], dummies[1]
            )));
        }
        let graph = Graph::new(r, per_edge.keys().copied())?;
        graph.require_three_regular()?;

        // Vertex symbols from the A rows, checked for injectivity.
        let mut vertex_symbol: Vec<Option<Symbol>> = vec![None; r];
        for (i, role) in roles.iter().enumerate() {
            if let (RoleKind::VertexA, RoleOwner::Vertex(u)) = (role.kind, role.owner) {
                let sym = table.row(i).entries()[1].clone();
                match &vertex_symbol[u] {
                    None => vertex_symbol[u] = Some(sym),
                    Some(existing) if *existing == sym => {}
                    Some(existing) => {
                        return Err(Error::Validation(format!(
                            "vertex {u} appears as both \"{existing}\" and \"{sym}\""
                        )));
                    }
                }
            }
        }
        let vertex_symbol: Vec<Symbol> = vertex_symbol
            .into_iter()
            .map(|s| s.ok_or_else(|| Error::Internal("vertex without A rows".into())))
            .collect::<Result<_>>()?;
        {
            let mut sorted = vertex_symbol.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != r {
                return Err(Error::Validation("two vertices share a symbol".into()));
            }
            if sorted.iter().any(|s| s.as_str() == ZERO || s.as_str() == GUARD) {
                return Err(Error::Validation(format!(
                    "vertex symbols may not be the constants \"{ZERO}\" or \"{GUARD}\""
                )));
            }
        }

        // Row shapes, collecting the positions that must hold specials.
        let zero = Symbol::new(ZERO)?;
        let guard = Symbol::new(GUARD)?;
        let mut special_positions: Vec<(usize, usize)> = Vec::new();
        for (i, role) in roles.iter().enumerate() {
            let cells = table.row(i).entries();
            let expect = |j: usize, sym: &Symbol| -> Result<()> {
                if &cells[j] != sym {
                    return Err(Error::Validation(format!(
                        "row {i} ({:?}) column {j}: expected \"{sym}\", found \"{}\"",
                        role.kind, cells[j]
                    )));
                }
                Ok(())
            };
            match (role.kind, role.owner) {
                (RoleKind::VertexA, RoleOwner::Vertex(u)) => {
                    expect(0, &zero)?;
                    expect(1, &vertex_symbol[u])?;
                    expect(2, &vertex_symbol[u])?;
                }
                (RoleKind::Critical, RoleOwner::Vertex(u)) => {
                    special_positions.push((i, 0));
                    expect(1, &vertex_symbol[u])?;
                    expect(2, &vertex_symbol[u])?;
                }
                (RoleKind::VertexC, RoleOwner::Vertex(u)) => {
                    special_positions.push((i, 0));
                    expect(1, &vertex_symbol[u])?;
                    special_positions.push((i, 2));
                }
                (RoleKind::VertexD, RoleOwner::Vertex(u)) => {
                    expect(0, &zero)?;
                    expect(1, &vertex_symbol[u])?;
                    expect(2, &guard)?;
                }
                (RoleKind::VertexE, RoleOwner::Vertex(u)) => {
                    expect(0, &zero)?;
                    expect(1, &guard)?;
                    expect(2, &vertex_symbol[u])?;
                }
                (RoleKind::EdgeXY, RoleOwner::Edge(x, y)) => {
                    expect(0, &zero)?;
                    expect(1, &vertex_symbol[x])?;
                    expect(2, &vertex_symbol[y])?;
                }
                (RoleKind::EdgeYX, RoleOwner::Edge(x, y)) => {
                    expect(0, &zero)?;
                    expect(1, &vertex_symbol[y])?;
                    expect(2, &vertex_symbol[x])?;
                }
                (RoleKind::DummyA, RoleOwner::Dummy) => {
                    expect(0, &zero)?;
                    special_positions.push((i, 1));
                    expect(2, &guard)?;
                }
                (RoleKind::DummyB, RoleOwner::Dummy) => {
                    expect(0, &zero)?;
                    expect(1, &guard)?;
                    special_positions.push((i, 2));
                }
                _ => unreachable!("owner kinds checked above"),
            }
        }

        // Every special symbol occurs exactly once in the whole table.
        let mut occurrences: HashMap<&Symbol, usize> = HashMap::new();
        for row in table.rows() {
            for sym in row.entries() {
                *occurrences.entry(sym).or_insert(0) += 1;
            }
        }
        for &(i, j) in &special_positions {
            let sym = &table.row(i).entries()[j];
            let count = occurrences[sym];
            if count != 1 {
                return Err(Error::Validation(format!(
                    "special symbol \"{sym}\" at row {i}, column {j} occurs {count} times"
                )));
            }
        }
        let special_symbols = special_positions.len();

        Ok(ReductionTable {
            table,
            roles,
            graph,
            special_symbols,
        })
    }
}

/// Aggregated base cost of the reduction table for `g`: 27r + 2|E| + 14.
pub fn abc(g: &Graph) -> Result<u64> {
    g.require_three_regular()?;
    Ok(27 * g.vertex_count() as u64 + 2 * g.edge_count() as u64 + 14)
}

/// Builds the reduction table of a 3-regular graph. Row order is
/// deterministic: vertices ascending, then edges in sorted pair order,
/// then dummies; special symbols are drawn as s1, s2, … in emission
/// order, vertex u becomes "v{u}".
pub fn reduce(g: &Graph) -> Result<ReductionTable> {
    g.require_three_regular()?;

    let mut rows: Vec<RowPattern> = Vec::new();
    let mut roles: Vec<RowRole> = Vec::new();
    let mut specials = 0usize;
    let zero = Symbol::new(ZERO)?;
    let guard = Symbol::new(GUARD)?;
    let vertex: Vec<Symbol> = (0..g.vertex_count())
        .map(|u| Symbol::new(format!("v{u}")))
        .collect::<Result<_>>()?;
    let mut fresh = || -> Symbol {
        specials += 1;
        Symbol::new(format!("s{specials}")).expect("generated token is valid")
    };
    let push = |rows: &mut Vec<RowPattern>, roles: &mut Vec<RowRole>, cells: [Symbol; 3], kind, owner| {
        rows.push(RowPattern::new(cells.to_vec()).expect("three cells"));
        roles.push(RowRole { kind, owner });
    };

    for (u, vu) in vertex.iter().enumerate() {
        for _ in 0..6 {
            push(
                &mut rows,
                &mut roles,
                [zero.clone(), vu.clone(), vu.clone()],
                RoleKind::VertexA,
                RoleOwner::Vertex(u),
            );
        }
        push(
            &mut rows,
            &mut roles,
            [fresh(), vu.clone(), vu.clone()],
            RoleKind::Critical,
            RoleOwner::Vertex(u),
        );
        for _ in 0..7 {
            let first = fresh();
            let last = fresh();
            push(
                &mut rows,
                &mut roles,
                [first, vu.clone(), last],
                RoleKind::VertexC,
                RoleOwner::Vertex(u),
            );
        }
        for _ in 0..3 {
            push(
                &mut rows,
                &mut roles,
                [zero.clone(), vu.clone(), guard.clone()],
                RoleKind::VertexD,
                RoleOwner::Vertex(u),
            );
        }
        for _ in 0..3 {
            push(
                &mut rows,
                &mut roles,
                [zero.clone(), guard.clone(), vu.clone()],
                RoleKind::VertexE,
                RoleOwner::Vertex(u),
            );
        }
    }
    for &(x, y) in g.edges() {
        push(
            &mut rows,
            &mut roles,
            [zero.clone(), vertex[x].clone(), vertex[y].clone()],
            RoleKind::EdgeXY,
            RoleOwner::Edge(x, y),
        );
        push(
            &mut rows,
            &mut roles,
            [zero.clone(), vertex[y].clone(), vertex[x].clone()],
            RoleKind::EdgeYX,
            RoleOwner::Edge(x, y),
        );
    }
    for _ in 0..7 {
        let s = fresh();
        push(
            &mut rows,
            &mut roles,
            [zero.clone(), s, guard.clone()],
            RoleKind::DummyA,
            RoleOwner::Dummy,
        );
    }
    for _ in 0..7 {
        let s = fresh();
        push(
            &mut rows,
            &mut roles,
            [zero.clone(), guard.clone(), s],
            RoleKind::DummyB,
            RoleOwner::Dummy,
        );
    }

    let table = Table::new(rows)?;
    Ok(ReductionTable {
        table,
        roles,
        graph: g.clone(),
        special_symbols: specials,
    })
}

/// Per-row base/extra cost accounting for a verified solution.
#[derive(Clone, Debug)]
pub struct CostLedger {
    /// Base cost per row: 2 for ⟨?,u,?⟩ rows, 1 otherwise.
    pub base: Vec<u64>,
    /// Stars paid minus base, per row.
    pub extra: Vec<u64>,
    pub total_extra: u64,
    pub abc: u64,
    /// abc + total extra; equals the verified star count.
    pub actual_cost: u64,
}

/// Splits the cost of a feasible solution into base and extra parts.
/// The output must pass verification at k = 7 against the table.
pub fn extra_cost(rt: &ReductionTable, output: &[AnonPattern]) -> Result<CostLedger> {
    let stars_total = crate::table::verify_solution(rt.table(), output, REDUCTION_K)?;
    let abc_value = abc(rt.graph())?;
    let mut base = Vec::with_capacity(output.len());
    let mut extra = Vec::with_capacity(output.len());
    let mut base_total = 0u64;
    let mut extra_total = 0u64;
    for (i, (role, row)) in rt.roles().iter().zip(output).enumerate() {
        let b = role.kind.base_cost();
        let stars = row.cost();
        if stars < b {
            return Err(Error::Internal(format!(
                "row {i} pays {stars} below its base cost {b}; the base-cost bound is broken"
            )));
        }
        base.push(b);
        extra.push(stars - b);
        base_total += b;
        extra_total += stars - b;
    }
    if base_total != abc_value {
        return Err(Error::Internal(format!(
            "base costs sum to {base_total}, aggregated base cost is {abc_value}"
        )));
    }
    if abc_value + extra_total != stars_total {
        return Err(Error::Internal(
            "base/extra split does not add up to the verified cost".into(),
        ));
    }
    Ok(CostLedger {
        base,
        extra,
        total_extra: extra_total,
        abc: abc_value,
        actual_cost: stars_total,
    })
}

/// Indices of the rows of each kind, in emission order.
struct RoleIndex {
    a: Vec<Vec<usize>>,
    crit: Vec<usize>,
    c: Vec<Vec<usize>>,
    d: Vec<Vec<usize>>,
    e: Vec<Vec<usize>>,
    exy: BTreeMap<(usize, usize), usize>,
    eyx: BTreeMap<(usize, usize), usize>,
    dummy_a: Vec<usize>,
    dummy_b: Vec<usize>,
}

impl RoleIndex {
    fn build(rt: &ReductionTable) -> RoleIndex {
        let r = rt.graph().vertex_count();
        let mut idx = RoleIndex {
            a: vec![Vec::new(); r],
            crit: vec![usize::MAX; r],
            c: vec![Vec::new(); r],
            d: vec![Vec::new(); r],
            e: vec![Vec::new(); r],
            exy: BTreeMap::new(),
            eyx: BTreeMap::new(),
            dummy_a: Vec::new(),
            dummy_b: Vec::new(),
        };
        for (i, role) in rt.roles().iter().enumerate() {
            match (role.kind, role.owner) {
                (RoleKind::VertexA, RoleOwner::Vertex(u)) => idx.a[u].push(i),
                (RoleKind::Critical, RoleOwner::Vertex(u)) => idx.crit[u] = i,
                (RoleKind::VertexC, RoleOwner::Vertex(u)) => idx.c[u].push(i),
                (RoleKind::VertexD, RoleOwner::Vertex(u)) => idx.d[u].push(i),
                (RoleKind::VertexE, RoleOwner::Vertex(u)) => idx.e[u].push(i),
                (RoleKind::EdgeXY, RoleOwner::Edge(x, y)) => {
                    idx.exy.insert((x, y), i);
                }
                (RoleKind::EdgeYX, RoleOwner::Edge(x, y)) => {
                    idx.eyx.insert((x, y), i);
                }
                (RoleKind::DummyA, _) => idx.dummy_a.push(i),
                (RoleKind::DummyB, _) => idx.dummy_b.push(i),
                _ => {}
            }
        }
        idx
    }
}

/// Attaches every edge to a covering endpoint (the smaller id when both
/// are covered), then drops cover vertices left without attachments,
/// smallest id first, recomputing after each removal.
fn effective_cover(g: &Graph, cover: &BTreeSet<usize>) -> (BTreeSet<usize>, BTreeMap<(usize, usize), usize>) {
    let mut cover = cover.clone();
    loop {
        let mut attached: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut load: BTreeMap<usize, usize> = cover.iter().map(|&u| (u, 0)).collect();
        for &(x, y) in g.edges() {
            let holder = if cover.contains(&x) { x } else { y };
            attached.insert((x, y), holder);
            *load.get_mut(&holder).expect("holder is in cover") += 1;
        }
        match load.iter().find(|&(_, &count)| count == 0) {
            Some((&idle, _)) => {
                cover.remove(&idle);
            }
            None => return (cover, attached),
        }
    }
}

/// Builds the canonical solution showing that a vertex cover of size t
/// yields a 7-anonymization of extra cost ≤ t: dummies absorb the
/// guard rows of uncovered vertices, covered vertices split their
/// ⟨0,u,u⟩ rows into two clusters that absorb their attached edge rows,
/// and each covered vertex's critical row joins its ⟨?,u,?⟩ cluster,
/// paying the single extra star.
pub fn cover_to_solution(rt: &ReductionTable, cover: &[usize]) -> Result<SolverReport> {
    let g = rt.graph();
    let cover_set: BTreeSet<usize> = cover.iter().copied().collect();
    if let Some(&v) = cover_set.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::Validation(format!(
            "cover vertex {v} outside 0..{}",
            g.vertex_count()
        )));
    }
    if let Some((x, y)) = g.uncovered_edge(&cover_set) {
        return Err(Error::Validation(format!(
            "cover misses edge ({x}, {y})"
        )));
    }

    let (effective, attached) = effective_cover(g, &cover_set);
    let idx = RoleIndex::build(rt);

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut d1: Vec<usize> = idx.dummy_a.clone();
    let mut d2: Vec<usize> = idx.dummy_b.clone();

    for u in 0..g.vertex_count() {
        if effective.contains(&u) {
            let mut a_u: Vec<usize> = idx.a[u][..3].to_vec();
            let mut b_u: Vec<usize> = idx.a[u][3..].to_vec();
            for (&(x, y), &holder) in &attached {
                if holder != u {
                    continue;
                }
                // The row with u in the middle column joins A_u, the row
                // with u in the last column joins B_u.
                if u == x {
                    a_u.push(idx.exy[&(x, y)]);
                    b_u.push(idx.eyx[&(x, y)]);
                } else {
                    a_u.push(idx.eyx[&(x, y)]);
                    b_u.push(idx.exy[&(x, y)]);
                }
            }
            a_u.extend_from_slice(&idx.d[u]);
            b_u.extend_from_slice(&idx.e[u]);
            blocks.push(a_u);
            blocks.push(b_u);
            let mut crit_block = idx.c[u].clone();
            crit_block.push(idx.crit[u]);
            blocks.push(crit_block);
        } else {
            let mut plain = idx.a[u].clone();
            plain.push(idx.crit[u]);
            blocks.push(plain);
            blocks.push(idx.c[u].clone());
            d1.extend_from_slice(&idx.d[u]);
            d2.extend_from_slice(&idx.e[u]);
        }
    }
    blocks.push(d1);
    blocks.push(d2);

    let clustering = Clustering::new(blocks, REDUCTION_K, rt.table().row_count())?;
    SolverReport::from_clustering(rt.table(), clustering, "cover-construction")
}

/// Extracts a vertex cover from any feasible solution: vertices with any
/// row paying extra ("imperfect") plus one endpoint of each edge whose
/// endpoints are both perfect. Its size never exceeds the total extra
/// cost.
pub fn solution_to_cover(rt: &ReductionTable, output: &[AnonPattern]) -> Result<Vec<usize>> {
    let ledger = extra_cost(rt, output)?;
    let g = rt.graph();
    let mut imperfect = vec![false; g.vertex_count()];
    for (role, &extra) in rt.roles().iter().zip(&ledger.extra) {
        if extra > 0 {
            if let RoleOwner::Vertex(u) = role.owner {
                imperfect[u] = true;
            }
        }
    }
    let mut cover: BTreeSet<usize> = (0..g.vertex_count()).filter(|&u| imperfect[u]).collect();
    for &(x, y) in g.edges() {
        if !imperfect[x] && !imperfect[y] {
            cover.insert(x.min(y));
        }
    }

    if let Some((x, y)) = g.uncovered_edge(&cover) {
        return Err(Error::Internal(format!(
            "extracted set misses edge ({x}, {y}); the extraction argument is broken"
        )));
    }
    if cover.len() as u64 > ledger.total_extra {
        return Err(Error::Internal(format!(
            "extracted cover of size {} exceeds the extra cost {}",
            cover.len(),
            ledger.total_extra
        )));
    }
    Ok(cover.into_iter().collect())
}

/// Minimum vertex cover by subset enumeration in increasing size,
/// lexicographic within a size; the first cover found wins.
pub fn min_vertex_cover(g: &Graph, max_vertices: usize) -> Result<Vec<usize>> {
    let r = g.vertex_count();
    if r > max_vertices {
        return Err(Error::Resource(format!(
            "vertex cover search accepts at most {max_vertices} vertices, graph has {r}"
        )));
    }
    if g.edge_count() == 0 {
        return Ok(Vec::new());
    }
    for size in 1..=r {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let set: BTreeSet<usize> = combo.iter().copied().collect();
            if g.uncovered_edge(&set).is_none() {
                return Ok(combo);
            }
            if !next_combination(&mut combo, r) {
                break;
            }
        }
    }
    Err(Error::Internal("the full vertex set covers every edge".into()))
}
