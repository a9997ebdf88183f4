//! High-level workflows shared by the CLI and the test suites.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use eichler_core::eichler::Library;
use eichler_core::info::GroupInfo;
use eichler_core::mnec::{gamma_levels_with, is_mnec, EichlerGraph};
use eichler_core::verdict::{classify, Verdict};
use eichler_core::zoo::build;
use rayon::prelude::*;

use crate::catalog::{
    build_catalog, cancellation_label, catalog_infos, parse_catalog, parse_table, CatalogEntry, TableRow,
    APPENDIX_CATALOG, APPENDIX_TABLE,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::report::RowJson;

pub struct Session {
    pub config: Config,
    pub lib: Library,
}

/// A computed catalog: tables, verdicts and the level graph.
pub struct CatalogAnalysis {
    pub infos: Vec<Arc<GroupInfo>>,
    pub verdicts: Vec<Verdict>,
    pub graph: EichlerGraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub id: (u32, u32),
    pub name: String,
    pub mismatches: Vec<String>,
}

impl Session {
    pub fn new(config: Config) -> Self {
        let lib = Library::new(config.caps());
        Session { config, lib }
    }

    /// Catalog entries from the configured paths, or the shipped catalog.
    pub fn catalog_entries(&self, path: Option<&Path>) -> Result<Vec<CatalogEntry>> {
        let paths: Vec<&Path> = match path {
            Some(p) => vec![p],
            None => self.config.catalog_paths.iter().map(|p| p.as_path()).collect(),
        };
        if paths.is_empty() {
            return parse_catalog(APPENDIX_CATALOG);
        }
        let mut out = Vec::new();
        for p in paths {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(p.display().to_string(), e))?;
            out.extend(parse_catalog(&text)?);
        }
        Ok(out)
    }

    pub fn load(&self, path: Option<&Path>) -> Result<Vec<Arc<GroupInfo>>> {
        let entries = self.catalog_entries(path)?;
        catalog_infos(&build_catalog(&entries)?, &self.config.caps())
    }

    /// A group from `-` (stdin), a catalog name, or an expression.
    pub fn resolve(&self, text: &str) -> Result<Arc<GroupInfo>> {
        let text = if text == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Io("stdin".into(), e))?;
            s.trim().to_string()
        } else {
            text.trim().to_string()
        };
        if let Some(e) = self.catalog_entries(None)?.into_iter().find(|e| e.name == text) {
            let g = build(&e.spec)?.with_name(e.name.clone());
            return Ok(Arc::new(GroupInfo::new(&g, &self.config.caps())?));
        }
        self.lib.get(&text).map_err(Error::from)
    }

    pub fn gamma(&self, infos: &[Arc<GroupInfo>], depth: usize) -> Result<EichlerGraph> {
        let caps = self.config.caps();
        Ok(gamma_levels_with(infos, depth, &self.lib, |cands, s| {
            cands.par_iter().map(|&i| is_mnec(&infos[i], s, &caps)).collect()
        })?)
    }

    pub fn classify_all(&self, infos: &[Arc<GroupInfo>]) -> Result<Vec<Verdict>> {
        Ok(infos.par_iter().map(|g| classify(g, &self.lib)).collect::<eichler_core::Result<Vec<_>>>()?)
    }

    pub fn analyse(&self, infos: Vec<Arc<GroupInfo>>, depth: usize) -> Result<CatalogAnalysis> {
        let verdicts = self.classify_all(&infos)?;
        let mut graph = self.gamma(&infos, depth)?;
        for n in graph.nodes.iter_mut() {
            if let Some(i) = infos.iter().position(|g| g.name == n.name) {
                n.status = Some(verdicts[i].status.to_string());
            } else if n.order == 1 {
                n.status = Some("PC".into());
            }
        }
        Ok(CatalogAnalysis { infos, verdicts, graph })
    }

    /// Table rows in catalog order; ids and group ids come from `expected`
    /// when the names match, otherwise ids are assigned per level.
    pub fn rows(&self, a: &CatalogAnalysis, expected: Option<&[TableRow]>) -> Vec<RowJson> {
        let ids = row_ids(a, expected);
        a.infos
            .iter()
            .zip(&a.verdicts)
            .map(|(g, v)| {
                let exp = expected.and_then(|rows| rows.iter().find(|r| r.name == g.name));
                let mut edges: Vec<(u32, u32)> =
                    a.graph.edges_from(&g.name).iter().filter_map(|t| ids.get(*t).copied()).collect();
                edges.sort();
                RowJson {
                    id: ids.get(&g.name).map(|&(x, y)| format!("({},{})", x, y)),
                    group_id: exp.map(|r| r.group_id.clone()).unwrap_or_else(|| g.order.to_string()),
                    edges: edges.iter().map(|(x, y)| format!("({},{})", x, y)).collect(),
                    m_h: g.m_quaternionic(),
                    description: g.name.clone(),
                    cancellation: cancellation_label(v.status).into(),
                }
            })
            .collect()
    }

    pub fn check(&self, a: &CatalogAnalysis, expected: &[TableRow]) -> Vec<RowCheck> {
        let ids = row_ids(a, Some(expected));
        expected
            .iter()
            .map(|r| {
                let mut mismatches = Vec::new();
                match a.infos.iter().position(|g| g.name == r.name) {
                    None => mismatches.push("missing from catalog".into()),
                    Some(i) => {
                        let g = &a.infos[i];
                        if g.m_quaternionic() != r.m_quaternionic {
                            mismatches.push(format!("m_H {} expected {}", g.m_quaternionic(), r.m_quaternionic));
                        }
                        let st = a.verdicts[i].status;
                        if st != r.cancellation {
                            mismatches.push(format!(
                                "cancellation {} expected {}",
                                cancellation_label(st),
                                cancellation_label(r.cancellation)
                            ));
                        }
                        match a.graph.nodes.iter().find(|n| n.name == r.name) {
                            None => mismatches.push(format!("not in any level (expected level {})", r.id.0)),
                            Some(n) if n.level as u32 != r.id.0 => {
                                mismatches.push(format!("level {} expected {}", n.level, r.id.0))
                            }
                            _ => {}
                        }
                        let got: BTreeSet<(u32, u32)> =
                            a.graph.edges_from(&r.name).iter().filter_map(|t| ids.get(*t).copied()).collect();
                        let want: BTreeSet<(u32, u32)> = r.edges.iter().copied().collect();
                        if got != want {
                            mismatches.push(format!("edges {:?} expected {:?}", got, want));
                        }
                    }
                }
                RowCheck { id: r.id, name: r.name.clone(), mismatches }
            })
            .collect()
    }
}

/// Row ids by name: expected ids where given, `(0,1)` for the trivial group,
/// otherwise `(level, position)` in catalog order.
fn row_ids(a: &CatalogAnalysis, expected: Option<&[TableRow]>) -> BTreeMap<String, (u32, u32)> {
    let mut ids = BTreeMap::new();
    let mut next: BTreeMap<u32, u32> = BTreeMap::new();
    for n in &a.graph.nodes {
        if n.order == 1 {
            ids.insert(n.name.clone(), (0, 1));
        }
    }
    for g in &a.infos {
        if let Some(r) = expected.and_then(|rows| rows.iter().find(|r| r.name == g.name)) {
            ids.insert(g.name.clone(), r.id);
        } else if let Some(n) = a.graph.nodes.iter().find(|n| n.name == g.name) {
            let c = next.entry(n.level as u32).or_insert(0);
            *c += 1;
            ids.insert(g.name.clone(), (n.level as u32, *c));
        }
    }
    ids
}

pub fn shipped_table() -> Vec<TableRow> {
    parse_table(APPENDIX_TABLE).expect("shipped table parses")
}
