//! Catalog files: one `name = expression   # order=k` entry per line.

use std::collections::HashSet;
use std::path::Path;
use std::sync::Arc;

use eichler_core::info::{Caps, GroupInfo};
use eichler_core::verdict::Status;
use eichler_core::zoo::{build, GroupSpec, NamedGroup};
use eichler_core::Error as CoreError;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// The shipped catalog of the 38 level-1 to level-3 groups.
pub const APPENDIX_CATALOG: &str = include_str!("../data/appendixA.catalog");
/// Expected table data for the shipped catalog.
pub const APPENDIX_TABLE: &str = include_str!("../data/appendixA.table");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
    pub declared_order: Option<u64>,
    pub line: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Core(CoreError::parse(line, column, message))
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(parse_err(line, 1, "expected `name = expression`"));
        };
        let name = raw[..eq].trim();
        if name.is_empty() {
            return Err(parse_err(line, 1, "empty name"));
        }
        let (expr, comment) = match raw[eq + 1..].find('#') {
            Some(h) => (&raw[eq + 1..eq + 1 + h], Some(&raw[eq + 2 + h..])),
            None => (&raw[eq + 1..], None),
        };
        let lead = expr.len() - expr.trim_start().len();
        let spec = GroupSpec::parse(expr.trim()).map_err(|e| match e {
            CoreError::Parse { column, message, .. } => parse_err(line, eq + 2 + lead + column - 1, message),
            other => parse_err(line, eq + 2 + lead, other.to_string()),
        })?;
        let declared_order = match comment.map(str::trim) {
            Some(c) if c.starts_with("order=") => {
                let v = c["order=".len()..].trim();
                Some(v.parse::<u64>().map_err(|_| {
                    let col = raw.find("order=").unwrap() + "order=".len() + 1;
                    parse_err(line, col, format!("bad order `{}`", v))
                })?)
            }
            _ => None,
        };
        if !seen.insert(name.to_string()) {
            return Err(parse_err(line, 1, format!("duplicate name `{}`", name)));
        }
        out.push(CatalogEntry { name: name.into(), spec, declared_order, line });
    }
    Ok(out)
}

fn build_entry(e: &CatalogEntry) -> Result<NamedGroup> {
    let g = build(&e.spec)?.with_name(e.name.clone());
    if let Some(k) = e.declared_order {
        if g.order() != k {
            return Err(Error::Core(CoreError::Validation {
                name: e.name.clone(),
                expected: format!("order {}", k),
                computed: format!("order {}", g.order()),
            }));
        }
    }
    Ok(g)
}

/// Build every entry (in parallel), validating declared orders.
pub fn build_catalog(entries: &[CatalogEntry]) -> Result<Vec<NamedGroup>> {
    entries.par_iter().map(build_entry).collect()
}

pub fn load_catalog(path: &Path) -> Result<Vec<NamedGroup>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(path.display().to_string(), e))?;
    build_catalog(&parse_catalog(&text)?)
}

/// Character tables and lattices for a built catalog.
pub fn catalog_infos(groups: &[NamedGroup], caps: &Caps) -> Result<Vec<Arc<GroupInfo>>> {
    groups.par_iter().map(|g| Ok(Arc::new(GroupInfo::new(g, caps)?))).collect()
}

/// One row of an expected table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub id: (u32, u32),
    pub name: String,
    pub group_id: String,
    pub edges: Vec<(u32, u32)>,
    pub m_quaternionic: u64,
    pub cancellation: Status,
}

fn parse_pair(s: &str) -> Option<(u32, u32)> {
    let s = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub fn cancellation_from_label(s: &str) -> Option<Status> {
    match s.trim() {
        "PC" => Some(Status::Pc),
        "Fails" => Some(Status::FailsSfc),
        "SFC (PC?)" => Some(Status::SfcHoldsPcOpen),
        "-" => Some(Status::Open),
        _ => None,
    }
}

pub fn cancellation_label(s: Status) -> &'static str {
    match s {
        Status::Pc => "PC",
        Status::FailsSfc => "Fails",
        Status::SfcHoldsPcOpen => "SFC (PC?)",
        Status::Open => "-",
    }
}

/// Parse `id | name | group id | edges | m_H | cancellation` rows.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = t.split('|').map(str::trim).collect();
        if cols.len() != 6 {
            return Err(parse_err(line, 1, "expected 6 `|`-separated columns"));
        }
        let id = parse_pair(cols[0]).ok_or_else(|| parse_err(line, 1, "bad id"))?;
        let mut edges = Vec::new();
        let e = cols[3].replace(' ', "");
        for part in e.split("),(") {
            let p = format!("({})", part.trim_start_matches('(').trim_end_matches(')'));
            edges.push(parse_pair(&p).ok_or_else(|| parse_err(line, 1, format!("bad edge `{}`", part)))?);
        }
        let m_quaternionic = cols[4].parse().map_err(|_| parse_err(line, 1, "bad m_H"))?;
        let cancellation =
            cancellation_from_label(cols[5]).ok_or_else(|| parse_err(line, 1, format!("bad cancellation `{}`", cols[5])))?;
        rows.push(TableRow { id, name: cols[1].into(), group_id: cols[2].into(), edges, m_quaternionic, cancellation });
    }
    Ok(rows)
}
