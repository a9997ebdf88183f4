//! Serializable views of verdicts, graphs and character tables, plus their
//! plain-text renderings.

use std::fmt::Write as _;

use eichler_core::chartab::CharacterTable;
use eichler_core::cyclo::Cyclotomic;
use eichler_core::mnec::EichlerGraph;
use eichler_core::quotient::{Certificate, QuotientWitness};
use eichler_core::verdict::Verdict;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartJson {
    pub kernel_classes: Vec<usize>,
    pub target_kernel_classes: Vec<usize>,
    /// (target generator, image representative in G), 1-based cycles.
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateJson {
    Generators { pairs: Vec<(String, String)> },
    Parts { parts: Vec<PartJson> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub target: String,
    pub index: u64,
    pub kernel_order: u64,
    pub kernel_classes: Vec<usize>,
    pub kernel_generators: Vec<String>,
    #[serde(rename = "iso_images")]
    pub certificate: CertificateJson,
}

fn pairs(p: &[(eichler_core::Permutation, eichler_core::Permutation)]) -> Vec<(String, String)> {
    p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

impl From<&QuotientWitness> for WitnessJson {
    fn from(w: &QuotientWitness) -> Self {
        WitnessJson {
            target: w.target.clone(),
            index: w.index,
            kernel_order: w.kernel.order,
            kernel_classes: w.kernel.classes.indices(),
            kernel_generators: w.kernel_generators.iter().map(|p| p.to_string()).collect(),
            certificate: match &w.certificate {
                Certificate::Generators(p) => CertificateJson::Generators { pairs: pairs(p) },
                Certificate::Parts(parts) => CertificateJson::Parts {
                    parts: parts
                        .iter()
                        .map(|(a, b, p)| PartJson {
                            kernel_classes: a.classes.indices(),
                            target_kernel_classes: b.classes.indices(),
                            pairs: pairs(p),
                        })
                        .collect(),
                },
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub rule: String,
    pub citation: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub name: String,
    pub order: u64,
    #[serde(rename = "mH")]
    pub m_h: u64,
    pub status: String,
    pub mode: String,
    pub trace: Vec<TraceJson>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            name: v.name.clone(),
            order: v.order,
            m_h: v.m_quaternionic,
            status: v.status.to_string(),
            mode: v.mode.as_str().into(),
            trace: v
                .trace
                .iter()
                .map(|t| TraceJson {
                    rule: t.rule.into(),
                    citation: t.citation.clone(),
                    target: t.target.clone(),
                    witness: t.witness.as_ref().map(WitnessJson::from),
                })
                .collect(),
            notes: v.notes.clone(),
        }
    }
}

pub fn verdict_text(v: &VerdictJson) -> String {
    let mut s = format!("{}  order {}  m_H {}  [{}]\n{}\n", v.name, v.order, v.m_h, v.mode, v.status);
    for t in &v.trace {
        let _ = write!(s, "  {:<4} {}", t.rule, t.citation);
        if let Some(tg) = &t.target {
            let _ = write!(s, ": {}", tg);
        }
        if let Some(w) = &t.witness {
            let _ = write!(s, " (kernel of order {})", w.kernel_order);
        }
        s.push('\n');
    }
    for n in &v.notes {
        let _ = writeln!(s, "  note: {}", n);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub name: String,
    pub order: u64,
    #[serde(rename = "mH")]
    pub m_h: u64,
    pub level: usize,
    pub status: Option<String>,
    #[serde(default)]
    pub excluded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

impl From<&EichlerGraph> for GraphJson {
    fn from(g: &EichlerGraph) -> Self {
        GraphJson {
            nodes: g
                .nodes
                .iter()
                .map(|n| NodeJson {
                    name: n.name.clone(),
                    order: n.order,
                    m_h: n.m_quaternionic,
                    level: n.level,
                    status: n.status.clone(),
                    excluded: n.excluded,
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|&(a, b)| EdgeJson { from: g.nodes[a].name.clone(), to: g.nodes[b].name.clone() })
                .collect(),
        }
    }
}

pub fn graph_text(g: &GraphJson) -> String {
    let mut s = String::new();
    let max = g.nodes.iter().map(|n| n.level).max().unwrap_or(0);
    for l in 0..=max {
        let _ = writeln!(s, "level {}", l);
        for n in g.nodes.iter().filter(|n| n.level == l) {
            let to: Vec<&str> = g.edges.iter().filter(|e| e.from == n.name).map(|e| e.to.as_str()).collect();
            let _ = writeln!(
                s,
                "  {:<12} order {:<8} m_H {:<3} {}{}{}",
                n.name,
                n.order,
                n.m_h,
                if to.is_empty() { String::new() } else { format!("-> {}", to.join(", ")) },
                if n.excluded { "  (excluded)" } else { "" },
                n.status.as_deref().map(|s| format!("  {}", s)).unwrap_or_default()
            );
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub size: u64,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub degree: u64,
    pub indicator: i8,
    pub values: Vec<ValueJson>,
}

/// A cyclotomic value as `sum coefficients[k] * zeta_conductor^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub conductor: u32,
    pub coefficients: Vec<i64>,
}

impl ValueJson {
    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::from_parts(self.conductor, &self.coefficients)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub name: String,
    pub order: u64,
    #[serde(rename = "mH")]
    pub m_h: u64,
    pub classes: Vec<ClassJson>,
    pub characters: Vec<CharacterJson>,
}

impl TableJson {
    pub fn new(name: &str, t: &CharacterTable) -> Self {
        TableJson {
            name: name.into(),
            order: t.order,
            m_h: t.m_quaternionic(),
            classes: t.sizes.iter().zip(&t.element_orders).map(|(&s, &o)| ClassJson { size: s, order: o }).collect(),
            characters: t
                .characters
                .iter()
                .zip(&t.degrees)
                .zip(&t.indicators)
                .map(|((row, &d), &nu)| CharacterJson {
                    degree: d,
                    indicator: nu,
                    values: row
                        .iter()
                        .map(|v| ValueJson { conductor: v.conductor(), coefficients: v.coefficients().to_vec() })
                        .collect(),
                })
                .collect(),
        }
    }
}

pub fn table_text(t: &TableJson) -> String {
    let mut cols: Vec<Vec<String>> = Vec::new();
    let mut s = format!("{}  order {}  m_H {}\n", t.name, t.order, t.m_h);
    let nclass = t.classes.len();
    let mut header = vec!["size".to_string(), "order".to_string()];
    header.extend(t.characters.iter().enumerate().map(|(i, c)| format!("X.{} ({:+})", i + 1, c.indicator)));
    cols.push(header);
    for k in 0..nclass {
        let mut col = vec![t.classes[k].size.to_string(), t.classes[k].order.to_string()];
        col.extend(t.characters.iter().map(|c| c.values[k].to_cyclotomic().to_string()));
        cols.push(col);
    }
    let widths: Vec<usize> = cols.iter().map(|c| c.iter().map(|x| x.chars().count()).max().unwrap_or(0)).collect();
    for r in 0..cols[0].len() {
        for (c, w) in cols.iter().zip(&widths) {
            let _ = write!(s, "{:>w$}  ", c[r], w = w);
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
    }
    s
}

/// One line of the human-readable catalog table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub id: Option<String>,
    pub group_id: String,
    pub edges: Vec<String>,
    #[serde(rename = "mH")]
    pub m_h: u64,
    pub description: String,
    pub cancellation: String,
}

pub fn rows_text(rows: &[RowJson]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<8} {:<16} {:<18} {:>4}  {:<14} Cancellation", "ID", "Group ID/Order", "Edges To", "m_H", "Description");
    for r in rows {
        let _ = writeln!(
            s,
            "{:<8} {:<16} {:<18} {:>4}  {:<14} {}",
            r.id.as_deref().unwrap_or(""),
            r.group_id,
            r.edges.join(","),
            r.m_h,
            r.description,
            r.cancellation
        );
    }
    s
}
