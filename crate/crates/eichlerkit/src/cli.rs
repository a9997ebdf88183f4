//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use eichler_core::eichler::{binary_polyhedral_quotients, is_eichler_simple, minimal_normal_subgroups};
use eichler_core::info::GroupInfo;
use eichler_core::mnec::{is_minimal_nec, is_mnec};
use eichler_core::quotient::has_quotient;
use eichler_core::verdict::{classify, classify_c22, classify_periodic, classify_two_group, Verdict};
use serde::{Deserialize, Serialize};

use crate::catalog::parse_table;
use crate::config::{Config, OutputFormat};
use crate::error::{Error, Result};
use crate::report::{graph_text, rows_text, table_text, verdict_text, GraphJson, TableJson, VerdictJson, WitnessJson};
use crate::session::{shipped_table, Session};

#[derive(Parser, Debug)]
#[command(name = "eichlerkit", version, about = "Cancellation status of finite groups from exact character tables")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// Configuration file (overrides EICHLERKIT_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Largest group handled element by element.
    #[arg(long, global = true)]
    pub order_cap: Option<u64>,
    /// Largest number of normal subgroups or quotient elements.
    #[arg(long, global = true)]
    pub class_cap: Option<u64>,
    /// Node budget for isomorphism search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// General classification.
    Classify { spec: String },
    /// Classification of a 2-group.
    Classify2 { spec: String },
    /// Classification of a group mapping onto C2 x C2.
    Classifyc22 { spec: String },
    /// Classification of a group with periodic cohomology.
    Periodic { spec: String },
    /// Number of quaternionic degree-2 characters.
    Mh { spec: String },
    /// Character table.
    Chartab { spec: String },
    /// Quotients: all normal subgroups, or a witness for `--target`.
    Quotients {
        spec: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Whether no proper quotient keeps m_H.
    EichlerSimple { spec: String },
    /// Minimal non-Eichler cover tests.
    Mnec {
        spec: String,
        /// Members of S (repeatable); default is the previous level of the catalog.
        #[arg(long = "over")]
        over: Vec<String>,
        /// Test membership of level N (S = level N-1 of the catalog).
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Level graph of a catalog.
    Gamma {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Table of a catalog: levels, edges, m_H and verdicts.
    Table {
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Expected table supplying row ids and group ids.
        #[arg(long)]
        expected: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Compare a catalog against an expected table.
    CheckTable {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        expected: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MhJson {
    pub name: String,
    pub order: u64,
    #[serde(rename = "mH")]
    pub m_h: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    pub kernel_order: u64,
    pub index: u64,
    #[serde(rename = "mH")]
    pub m_h: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientsJson {
    pub name: String,
    pub order: u64,
    pub quotients: Vec<QuotientJson>,
    pub binary_polyhedral: Vec<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleJson {
    pub name: String,
    #[serde(rename = "mH")]
    pub m_h: u64,
    pub eichler_simple: bool,
    /// Orders of minimal normal subgroups and the m_H of their quotients.
    pub minimal_normal: Vec<QuotientJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MnecJson {
    pub name: String,
    #[serde(rename = "mH")]
    pub m_h: u64,
    pub over: Vec<String>,
    pub mnec: bool,
    /// Members of S that the group is a minimal non-Eichler cover of.
    pub minimal_cover_of: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub id: String,
    pub name: String,
    pub ok: bool,
    pub mismatches: Vec<String>,
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

/// Defaults, then the config file, then flags.
pub fn resolve_config(g: &GlobalArgs) -> Result<Config> {
    let mut c = match &g.config {
        Some(p) => Config::from_file(p)?,
        None => Config::from_env()?,
    };
    if let Some(v) = g.order_cap {
        c.order_cap = v;
    }
    if let Some(v) = g.class_cap {
        c.class_cap = v;
    }
    if let Some(v) = g.budget {
        c.backtrack_budget = v;
    }
    if let Some(f) = g.format {
        c.output_format = f;
    }
    c.validate()?;
    Ok(c)
}

fn emit<T: Serialize>(out: &mut dyn Write, fmt: OutputFormat, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let s = match fmt {
        OutputFormat::Json => serde_json::to_string_pretty(value)? + "\n",
        _ => text(),
    };
    out.write_all(s.as_bytes()).map_err(|e| Error::Io("stdout".into(), e))
}

fn emit_verdict(out: &mut dyn Write, fmt: OutputFormat, v: &Verdict) -> Result<()> {
    let j = VerdictJson::from(v);
    emit(out, fmt, &j, || verdict_text(&j))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let config = resolve_config(&cli.global)?;
    let fmt = config.output_format;
    let session = Session::new(config);
    let lib = &session.lib;
    match &cli.command {
        Command::Classify { spec } => emit_verdict(out, fmt, &classify(&*session.resolve(spec)?, lib)?)?,
        Command::Classify2 { spec } => emit_verdict(out, fmt, &classify_two_group(&*session.resolve(spec)?, lib)?)?,
        Command::Classifyc22 { spec } => emit_verdict(out, fmt, &classify_c22(&*session.resolve(spec)?, lib)?)?,
        Command::Periodic { spec } => emit_verdict(out, fmt, &classify_periodic(&*session.resolve(spec)?, lib)?)?,
        Command::Mh { spec } => {
            let g = session.resolve(spec)?;
            let j = MhJson { name: g.name.clone(), order: g.order, m_h: g.m_quaternionic() };
            emit(out, fmt, &j, || format!("{}\n", j.m_h))?;
        }
        Command::Chartab { spec } => {
            let g = session.resolve(spec)?;
            let j = TableJson::new(&g.name, &g.table);
            emit(out, fmt, &j, || table_text(&j))?;
        }
        Command::Quotients { spec, target } => {
            let g = session.resolve(spec)?;
            if let Some(t) = target {
                let h = session.resolve(t)?;
                match has_quotient(&g, &h, &lib.caps)? {
                    Some(w) => {
                        let j = WitnessJson::from(&w);
                        emit(out, fmt, &j, || {
                            format!("{} maps onto {}: kernel of order {}\n", g.name, h.name, j.kernel_order)
                        })?;
                    }
                    None => {
                        emit(out, fmt, &Option::<WitnessJson>::None, || {
                            format!("{} does not map onto {}\n", g.name, h.name)
                        })?;
                    }
                }
            } else {
                let j = quotients_json(&g, &session)?;
                emit(out, fmt, &j, || {
                    let mut s = format!("{}  order {}\n", j.name, j.order);
                    for q in &j.quotients {
                        s += &format!("  index {:<8} kernel order {:<8} m_H {}\n", q.index, q.kernel_order, q.m_h);
                    }
                    for w in &j.binary_polyhedral {
                        s += &format!("  onto {} (kernel order {})\n", w.target, w.kernel_order);
                    }
                    s
                })?;
            }
        }
        Command::EichlerSimple { spec } => {
            let g = session.resolve(spec)?;
            let j = SimpleJson {
                name: g.name.clone(),
                m_h: g.m_quaternionic(),
                eichler_simple: is_eichler_simple(&g),
                minimal_normal: minimal_normal_subgroups(&g)
                    .iter()
                    .map(|n| QuotientJson {
                        kernel_order: n.order,
                        index: g.order / n.order,
                        m_h: g.quotient_m_quaternionic(&n.classes),
                    })
                    .collect(),
            };
            emit(out, fmt, &j, || format!("{}\n", j.eichler_simple))?;
        }
        Command::Mnec { spec, over, level, catalog } => {
            let g = session.resolve(spec)?;
            let s: Vec<Arc<GroupInfo>> = if over.is_empty() {
                previous_level(&session, catalog.as_deref(), *level)?
            } else {
                over.iter().map(|o| session.resolve(o)).collect::<Result<_>>()?
            };
            let mut covers = Vec::new();
            for h in &s {
                if is_minimal_nec(&g, h, &lib.caps)? {
                    covers.push(h.name.clone());
                }
            }
            let j = MnecJson {
                name: g.name.clone(),
                m_h: g.m_quaternionic(),
                over: s.iter().map(|h| h.name.clone()).collect(),
                mnec: is_mnec(&g, &s, &lib.caps)?,
                minimal_cover_of: covers,
            };
            emit(out, fmt, &j, || {
                let mut t = format!("{}\n", j.mnec);
                if !j.minimal_cover_of.is_empty() {
                    t += &format!("minimal non-Eichler cover of {}\n", j.minimal_cover_of.join(", "));
                }
                t
            })?;
        }
        Command::Gamma { catalog, depth } => {
            let infos = session.load(catalog.as_deref())?;
            let a = session.analyse(infos, *depth)?;
            let j = GraphJson::from(&a.graph);
            match fmt {
                OutputFormat::Dot => write_str(out, &a.graph.to_dot())?,
                _ => emit(out, fmt, &j, || graph_text(&j))?,
            }
        }
        Command::Table { catalog, expected, depth } => {
            let expected = load_expected(expected.as_deref(), catalog.is_none())?;
            let a = session.analyse(session.load(catalog.as_deref())?, *depth)?;
            let rows = session.rows(&a, expected.as_deref());
            match fmt {
                OutputFormat::Dot => write_str(out, &a.graph.to_dot())?,
                _ => emit(out, fmt, &rows, || rows_text(&rows))?,
            }
        }
        Command::CheckTable { catalog, expected, depth } => {
            let expected = load_expected(expected.as_deref(), true)?.unwrap_or_default();
            let a = session.analyse(session.load(catalog.as_deref())?, *depth)?;
            let checks: Vec<CheckJson> = session
                .check(&a, &expected)
                .into_iter()
                .map(|c| CheckJson {
                    id: format!("({},{})", c.id.0, c.id.1),
                    name: c.name,
                    ok: c.mismatches.is_empty(),
                    mismatches: c.mismatches,
                })
                .collect();
            let bad = checks.iter().filter(|c| !c.ok).count();
            emit(out, fmt, &checks, || {
                let mut s = String::new();
                for c in &checks {
                    if c.ok {
                        s += &format!("{:<8} {:<14} ok\n", c.id, c.name);
                    } else {
                        s += &format!("{:<8} {:<14} MISMATCH {}\n", c.id, c.name, c.mismatches.join("; "));
                    }
                }
                s += &format!("{} of {} rows match\n", checks.len() - bad, checks.len());
                s
            })?;
            return Ok(if bad == 0 { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn write_str(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes()).map_err(|e| Error::Io("stdout".into(), e))
}

/// The expected table from `path`, or the shipped one when `shipped` is set.
fn load_expected(path: Option<&std::path::Path>, shipped: bool) -> Result<Option<Vec<crate::catalog::TableRow>>> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(p.display().to_string(), e))?;
            Ok(Some(parse_table(&text)?))
        }
        None if shipped => Ok(Some(shipped_table())),
        None => Ok(None),
    }
}

/// Non-excluded members of level `level - 1` of the catalog.
fn previous_level(session: &Session, catalog: Option<&std::path::Path>, level: usize) -> Result<Vec<Arc<GroupInfo>>> {
    if level == 0 {
        return Err(Error::Usage("level must be at least 1".into()));
    }
    if level == 1 {
        return Ok(vec![session.lib.get("C(1)")?]);
    }
    let infos = session.load(catalog)?;
    let graph = session.gamma(&infos, level - 1)?;
    Ok(graph
        .level(level - 1)
        .filter(|n| !n.excluded)
        .filter_map(|n| infos.iter().find(|g| g.name == n.name).cloned())
        .collect())
}

fn quotients_json(g: &GroupInfo, session: &Session) -> Result<QuotientsJson> {
    let mut quotients: Vec<QuotientJson> = g
        .lattice
        .iter()
        .map(|m| QuotientJson { kernel_order: m.order, index: g.order / m.order, m_h: g.quotient_m_quaternionic(&m.classes) })
        .collect();
    quotients.sort_by_key(|q| (q.index, q.m_h));
    let binary_polyhedral = binary_polyhedral_quotients(g, &session.lib)?.iter().map(|(_, w)| WitnessJson::from(w)).collect();
    Ok(QuotientsJson { name: g.name.clone(), order: g.order, quotients, binary_polyhedral })
}
