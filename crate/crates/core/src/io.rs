//! Text formats: table CSV, anonymized-grid CSV, clustering files, graph
//! files, and the reduction role sidecar.
//!
//! The CSV forms are headerless, one row per line, comma-separated tokens.
//! Tokens may not contain commas; `*` is only legal in anonymized grids.

use crate::error::{Error, Result};
use crate::reduction::{Graph, RoleKind, RoleOwner, RowRole};
use crate::table::{AnonPattern, Clustering, RowPattern, Table, STAR};

pub fn parse_table(text: &str) -> Result<Table> {
    let mut rows = Vec::new();
    for (lineno, line) in non_empty_lines(text) {
        let tokens: Vec<&str> = line.split(',').collect();
        if tokens.contains(&STAR) {
            return Err(Error::Parse(format!(
                "line {lineno}: \"*\" is not a legal input token"
            )));
        }
        let row = RowPattern::from_tokens(&tokens)
            .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
        rows.push(row);
    }
    Table::new(rows).map_err(|e| Error::Parse(e.to_string()))
}

pub fn table_to_csv(table: &Table) -> String {
    let mut out = String::new();
    for row in table.rows() {
        out.push_str(&row.tokens().join(","));
        out.push('\n');
    }
    out
}

pub fn parse_grid(text: &str) -> Result<Vec<AnonPattern>> {
    let mut grid = Vec::new();
    for (lineno, line) in non_empty_lines(text) {
        let tokens: Vec<&str> = line.split(',').collect();
        let row = AnonPattern::from_tokens(&tokens)
            .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
        grid.push(row);
    }
    if grid.is_empty() {
        return Err(Error::Parse("grid file has no rows".into()));
    }
    Ok(grid)
}

pub fn grid_to_csv(grid: &[AnonPattern]) -> String {
    let mut out = String::new();
    for row in grid {
        out.push_str(&row.render());
        out.push('\n');
    }
    out
}

/// One line per row, line i carrying the block id of row i.
pub fn clustering_to_text(c: &Clustering) -> String {
    let mut out = String::new();
    for id in c.to_row_ids() {
        out.push_str(&id.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_clustering(text: &str, k: usize) -> Result<Clustering> {
    let mut ids = Vec::new();
    for (lineno, line) in non_empty_lines(text) {
        let id: usize = line
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: expected a block id, found {line:?}")))?;
        ids.push(id);
    }
    Clustering::from_row_ids(&ids, k)
}

/// Graph format: first line "r e", then e lines "u v" with u < v.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = non_empty_lines(text);
    let Some((lineno, header)) = lines.next() else {
        return Err(Error::Parse("graph file is empty".into()));
    };
    let (r, e) = parse_pair(header)
        .ok_or_else(|| Error::Parse(format!("line {lineno}: expected \"r e\", found {header:?}")))?;
    let mut edges = Vec::with_capacity(e);
    for (lineno, line) in lines {
        let (u, v) = parse_pair(line)
            .ok_or_else(|| Error::Parse(format!("line {lineno}: expected \"u v\", found {line:?}")))?;
        if u >= v {
            return Err(Error::Parse(format!(
                "line {lineno}: edge endpoints must satisfy u < v, found {u} {v}"
            )));
        }
        edges.push((u, v));
    }
    if edges.len() != e {
        return Err(Error::Parse(format!(
            "header announces {e} edges, file has {}",
            edges.len()
        )));
    }
    Graph::new(r, edges)
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Role sidecar: one line per row, "index,kind,owner".
pub fn roles_to_text(roles: &[RowRole]) -> String {
    let mut out = String::new();
    for (i, role) in roles.iter().enumerate() {
        let owner = match role.owner {
            RoleOwner::Vertex(u) => format!("v{u}"),
            RoleOwner::Edge(x, y) => format!("e{x}-{y}"),
            RoleOwner::Dummy => "-".to_owned(),
        };
        out.push_str(&format!("{i},{},{owner}\n", role.kind.token()));
    }
    out
}

pub fn parse_roles(text: &str) -> Result<Vec<RowRole>> {
    let mut roles = Vec::new();
    for (lineno, line) in non_empty_lines(text) {
        let mut parts = line.split(',');
        let (Some(index), Some(kind), Some(owner), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::Parse(format!(
                "line {lineno}: expected \"index,kind,owner\", found {line:?}"
            )));
        };
        let index: usize = index
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: bad row index {index:?}")))?;
        if index != roles.len() {
            return Err(Error::Parse(format!(
                "line {lineno}: role index {index} out of order (expected {})",
                roles.len()
            )));
        }
        let kind = RoleKind::from_token(kind)
            .ok_or_else(|| Error::Parse(format!("line {lineno}: unknown role kind {kind:?}")))?;
        let owner = parse_owner(owner)
            .ok_or_else(|| Error::Parse(format!("line {lineno}: bad owner {owner:?}")))?;
        roles.push(RowRole { kind, owner });
    }
    if roles.is_empty() {
        return Err(Error::Parse("role sidecar has no rows".into()));
    }
    Ok(roles)
}

fn parse_owner(s: &str) -> Option<RoleOwner> {
    if s == "-" {
        return Some(RoleOwner::Dummy);
    }
    if let Some(rest) = s.strip_prefix('v') {
        return rest.parse().ok().map(RoleOwner::Vertex);
    }
    if let Some(rest) = s.strip_prefix('e') {
        let (x, y) = rest.split_once('-')?;
        return Some(RoleOwner::Edge(x.parse().ok()?, y.parse().ok()?));
    }
    None
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut parts = line.split_whitespace();
    let a = parts.next()?.parse().ok()?;
    let b = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((a, b))
}

fn non_empty_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}
