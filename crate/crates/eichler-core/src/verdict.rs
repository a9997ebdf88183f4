//! The classification engine.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::eichler::{
    has_cyclic_sylow2, has_periodic_cohomology, is_eichler_quotient, is_s_eichler, quaternion_quotients, Library,
};
use crate::error::{Error, Result};
use crate::info::GroupInfo;
use crate::quotient::{has_quotient, is_isomorphic, QuotientWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pc,
    SfcHoldsPcOpen,
    FailsSfc,
    Open,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pc => "PC",
            Status::SfcHoldsPcOpen => "SFC_HOLDS_PC_OPEN",
            Status::FailsSfc => "FAILS_SFC",
            Status::Open => "OPEN",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        [Status::Pc, Status::SfcHoldsPcOpen, Status::FailsSfc, Status::Open].into_iter().find(|x| x.as_str() == s)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    General,
    TwoGroup,
    C22,
    Periodic,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::General => "general",
            Mode::TwoGroup => "two_group",
            Mode::C22 => "c22",
            Mode::Periodic => "periodic",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub rule: &'static str,
    pub citation: String,
    /// Target group of the quotient witness, when there is one.
    pub target: Option<String>,
    pub witness: Option<QuotientWitness>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub order: u64,
    pub m_quaternionic: u64,
    pub status: Status,
    pub mode: Mode,
    pub trace: Vec<TraceEntry>,
    pub notes: Vec<String>,
}

/// Known-fact lists, as group expressions.
pub struct FactTables;

impl FactTables {
    /// Binary polyhedral groups with PC lifting (besides `T~^n x I~^m`).
    pub const PC_BASE: [&'static str; 8] = ["C(1)", "Q(8)", "Q(12)", "Q(16)", "Q(20)", "BT", "BO", "BI"];
    /// Groups known to fail SFC (beyond the `Q_{4n}`, `n >= 6` family).
    pub const SFC_FAIL: [&'static str; 11] = [
        "Q(8) x C(2)",
        "Q(12) x C(2)",
        "Q(16) x C(2)",
        "Q(20) x C(2)",
        "BO x C(2)",
        "BI x C(2)",
        "SG(32,14)",
        "SG(36,7)",
        "SG(64,14)",
        "SG(100,7)",
        "BT x C(2) x C(2)",
    ];
    /// Groups with SFC known to hold and PC open. `T~ x C2` (which has PC)
    /// is handled separately.
    pub const SFC_HOLD: [&'static str; 4] = ["SG(96,66)", "SG(192,1022)", "BT x Q(12)", "BT x Q(20)"];
    /// Sporadic blockers of the Eichler-quotient criterion, besides
    /// `Q_{4n}` (n >= 6) and `Q8 : T~^n`.
    pub const BLOCKERS: [&'static str; 14] = [
        "Q(8) x C(2)",
        "Q(12) x C(2)",
        "Q(16) x C(2)",
        "Q(20) x C(2)",
        "BO x C(2)",
        "BI x C(2)",
        "SG(32,14)",
        "SG(36,7)",
        "SG(64,14)",
        "SG(100,7)",
        "BT x C(2)",
        "SG(96,66)",
        "SG(384,18129)",
        "SG(1152,155476)",
    ];
    /// Quotients ruling out an Eichler quotient `T~ x C2` for covers of it.
    pub const TXC2_BLOCKERS: [&'static str; 6] =
        ["BT x C(2) x C(2)", "BT x Q(12)", "SG(192,1022) x C(2)", "BT x Q(20)", "BT x BO", "BT x BT x C(2)"];
    /// Failure quotients for groups mapping onto `C2 x C2` (besides the
    /// parametric quaternion families).
    pub const C22_FAIL: [&'static str; 5] = ["BT x C(2) x C(2)", "BO x C(2)", "BI x C(2)", "SG(32,14)", "SG(64,14)"];
    /// Failure quotients for 2-groups (besides `Q_{2^n}`, n >= 5).
    pub const TWO_GROUP_FAIL: [&'static str; 4] = ["Q(8) x C(2)", "Q(16) x C(2)", "SG(32,14)", "SG(64,14)"];
}

/// `T~^n x I~^m` for `n + m >= 1`, as an expression.
pub fn tn_im(n: usize, m: usize) -> String {
    let mut parts: Vec<&str> = Vec::new();
    parts.extend(core::iter::repeat_n("BT", n));
    parts.extend(core::iter::repeat_n("BI", m));
    parts.join(" x ")
}

/// `Q8 : T~^n`, each factor acting through its `C3` quotient.
pub fn q8_by_tn(n: usize) -> String {
    if n == 1 {
        return "SG(192,1022)".into();
    }
    let acting = tn_im(n, 0);
    let mut s = format!("SD(Q(8), {}", acting);
    for _ in 0..n {
        s += "; b, a*b; a, b";
    }
    s + ")"
}

/// The PC list members whose order divides `order`.
pub fn pc_targets(order: u64) -> Vec<String> {
    let mut out: Vec<String> = FactTables::PC_BASE.iter().map(|s| s.to_string()).collect();
    out.retain(|e| {
        let o = match e.as_str() {
            "C(1)" => 1,
            "BT" => 24,
            "BO" => 48,
            "BI" => 120,
            q => q[2..q.len() - 1].parse().unwrap_or(0),
        };
        o > 0 && order % o == 0
    });
    let mut tn = 1u64;
    for n in 0.. {
        if order % tn != 0 {
            break;
        }
        let mut q = tn;
        for m in 0.. {
            if order % q != 0 {
                break;
            }
            if n + m >= 2 {
                out.push(tn_im(n, m));
            }
            q *= 120;
        }
        tn *= 24;
    }
    out
}

fn get_all(lib: &Library, exprs: &[String]) -> Result<Vec<Arc<GroupInfo>>> {
    exprs.iter().map(|e| lib.get(e)).collect()
}

fn order_of_expr(lib: &Library, e: &str) -> Result<u64> {
    Ok(lib.get(e)?.order)
}

/// Quotients of `G` among `exprs` (skipping those whose order cannot divide).
fn quotients_among(g: &GroupInfo, exprs: &[&str], lib: &Library) -> Result<Vec<(String, QuotientWitness)>> {
    let mut out = Vec::new();
    for e in exprs {
        if g.order % order_of_expr(lib, e)? != 0 {
            continue;
        }
        if let Some(w) = has_quotient(g, &*lib.get(e)?, &lib.caps)? {
            out.push((e.to_string(), w));
        }
    }
    Ok(out)
}

fn entry(rule: &'static str, citation: &str, target: Option<String>, witness: Option<QuotientWitness>) -> TraceEntry {
    TraceEntry { rule, citation: citation.into(), target, witness }
}

fn verdict(g: &GroupInfo, mode: Mode) -> Verdict {
    Verdict {
        name: g.name.clone(),
        order: g.order,
        m_quaternionic: g.m_quaternionic(),
        status: Status::Open,
        mode,
        trace: Vec::new(),
        notes: Vec::new(),
    }
}

/// Product `H x K`: a factor `H` from the base PC list and the
/// remaining factors `K` with no `C2` quotient and `m_H(K) = 0`.
fn pc_product(g: &GroupInfo, lib: &Library) -> Result<Option<String>> {
    let fs = g.factors();
    if fs.len() < 2 {
        return Ok(None);
    }
    for (i, f) in fs.iter().enumerate() {
        let mut others_ok = true;
        let mut k_rl = 1;
        let mut k_mh = 0;
        for (j, o) in fs.iter().enumerate() {
            if j != i {
                // m_H(A x B) = m_H(A) rl(B) + rl(A) m_H(B)
                k_mh = k_mh * o.table.real_linear() + k_rl * o.m_quaternionic();
                k_rl *= o.table.real_linear();
            }
        }
        if k_rl != 1 || k_mh != 0 {
            others_ok = false;
        }
        if !others_ok {
            continue;
        }
        for e in &FactTables::PC_BASE[1..] {
            let h = lib.get(e)?;
            if h.order == f.order && is_isomorphic(f, &h, &lib.caps)? {
                return Ok(Some(e.to_string()));
            }
        }
    }
    Ok(None)
}

/// Blockers of the Eichler-quotient criterion: quotients of the forms
/// `Q_{4n}` (n >= 6), `Q8 : T~^n` (n >= 1), or the sporadic list.
pub fn eichler_blockers(g: &GroupInfo, lib: &Library) -> Result<Vec<(String, QuotientWitness)>> {
    let mut out: Vec<(String, QuotientWitness)> =
        quaternion_quotients(g, 6, lib)?.into_iter().map(|(n, w)| (format!("Q({})", 4 * n), w)).collect();
    let mut n = 1;
    while g.order % (8 * 24u64.pow(n as u32)) == 0 {
        let e = q8_by_tn(n);
        if let Some(w) = has_quotient(g, &*lib.get(&e)?, &lib.caps)? {
            out.push((e, w));
        }
        n += 1;
    }
    out.extend(quotients_among(g, &FactTables::BLOCKERS, lib)?);
    Ok(out)
}

/// General classification: first matching rule decides, later matches are
/// still recorded.
pub fn classify(g: &GroupInfo, lib: &Library) -> Result<Verdict> {
    let mut v = verdict(g, Mode::General);
    let mut decided: Option<Status> = None;
    fn decide(v: &mut Verdict, decided: &mut Option<Status>, s: Status) {
        if decided.is_none() {
            *decided = Some(s);
            v.status = s;
        }
    }

    // R1: Eichler quotient in the PC list
    let s = get_all(lib, &pc_targets(g.order))?;
    if let Some((i, w)) = is_s_eichler(g, &s, &lib.caps)? {
        v.trace.push(entry("R1", "Eichler quotient with PC lifting", Some(s[i].name.clone()), Some(w)));
        decide(&mut v, &mut decided, Status::Pc);
    }
    // R1b: products with a PC factor
    if let Some(h) = pc_product(g, lib)? {
        v.trace.push(entry("R1b", "product H x K with K having no C2 quotient and no quaternionic part", Some(h), None));
        decide(&mut v, &mut decided, Status::Pc);
    }
    // R2: T~ x C2 itself
    let txc2 = lib.get("BT x C(2)")?;
    if g.order == 48 && is_isomorphic(g, &txc2, &lib.caps)? {
        v.trace.push(entry("R2", "T~ x C2 has PC", Some(txc2.name.clone()), None));
        decide(&mut v, &mut decided, Status::Pc);
    }
    // R3: quotient known to fail SFC
    let mut fails: Vec<(String, QuotientWitness)> =
        quaternion_quotients(g, 6, lib)?.into_iter().map(|(n, w)| (format!("Q({})", 4 * n), w)).collect();
    fails.extend(quotients_among(g, &FactTables::SFC_FAIL, lib)?);
    for (t, w) in fails {
        v.trace.push(entry("R3", "quotient failing SFC", Some(t), Some(w)));
        decide(&mut v, &mut decided, Status::FailsSfc);
    }
    // R4: SFC known to hold
    for e in FactTables::SFC_HOLD {
        let h = lib.get(e)?;
        if h.order == g.order && is_isomorphic(g, &h, &lib.caps)? {
            v.trace.push(entry("R4", "SFC holds, PC open", Some(e.into()), None));
            decide(&mut v, &mut decided, Status::SfcHoldsPcOpen);
        }
    }
    if decided.is_none() {
        for (t, w) in eichler_blockers(g, lib)? {
            v.trace.push(entry("R5", "no Eichler quotient in the PC list; blocked by quotient", Some(t), Some(w)));
        }
        if v.trace.is_empty() {
            v.trace.push(entry("R5", "undecided", None, None));
        }
        decide(&mut v, &mut decided, Status::Open);
    }
    Ok(v)
}

fn fail_or_pc(v: &mut Verdict, hits: Vec<(String, QuotientWitness)>, citation: &str) {
    if hits.is_empty() {
        v.status = Status::Pc;
        v.trace.push(entry("M0", "no listed quotient: PC", None, None));
    } else {
        v.status = Status::FailsSfc;
        for (t, w) in hits {
            v.trace.push(entry("M1", citation, Some(t), Some(w)));
        }
    }
}

/// 2-groups: PC iff no quotient `Q8 x C2`, `Q16 x C2`, `G(32,14)`,
/// `G(64,14)` or `Q_{2^n}` (n >= 5).
pub fn classify_two_group(g: &GroupInfo, lib: &Library) -> Result<Verdict> {
    if !g.order.is_power_of_two() {
        return Err(Error::NotATwoGroup);
    }
    let mut v = verdict(g, Mode::TwoGroup);
    let mut hits: Vec<(String, QuotientWitness)> =
        quaternion_quotients(g, 8, lib)?.into_iter().map(|(n, w)| (format!("Q({})", 4 * n), w)).collect();
    hits.extend(quotients_among(g, &FactTables::TWO_GROUP_FAIL, lib)?);
    fail_or_pc(&mut v, hits, "2-group failure quotient");
    Ok(v)
}

/// Groups mapping onto `C2 x C2`.
pub fn classify_c22(g: &GroupInfo, lib: &Library) -> Result<Verdict> {
    if g.table.real_linear() < 4 {
        return Err(Error::NoC22Quotient);
    }
    let mut v = verdict(g, Mode::C22);
    let mut hits: Vec<(String, QuotientWitness)> = quaternion_quotients(g, 6, lib)?
        .into_iter()
        .filter(|(n, _)| n % 2 == 0)
        .map(|(n, w)| (format!("Q({})", 4 * n), w))
        .collect();
    let mut n = 2;
    while 8 * n <= g.order {
        if g.order % (8 * n) == 0 && (n == 2 || n == 4 || (n >= 3 && n % 2 == 1)) {
            let e = format!("Q({}) x C(2)", 4 * n);
            if let Some(w) = has_quotient(g, &*lib.get(&e)?, &lib.caps)? {
                hits.push((e, w));
            }
        }
        n += 1;
    }
    hits.extend(quotients_among(g, &FactTables::C22_FAIL, lib)?);
    fail_or_pc(&mut v, hits, "failure quotient for groups onto C2 x C2");
    Ok(v)
}

/// Periodic cohomology: PC iff `m_H <= 2`.
pub fn classify_periodic(g: &GroupInfo, lib: &Library) -> Result<Verdict> {
    if !has_periodic_cohomology(g, &lib.caps)? {
        return Err(Error::NotPeriodic);
    }
    let mut v = verdict(g, Mode::Periodic);
    let mh = g.m_quaternionic();
    if mh <= 2 {
        v.status = Status::Pc;
        v.trace.push(entry("P1", "periodic cohomology and m_H <= 2: every class cancels", None, None));
    } else {
        v.status = Status::FailsSfc;
        if mh == 3 {
            v.trace.push(entry("P2", "periodic cohomology and m_H = 3: classes in the kernel group fail", None, None));
            if has_cyclic_sylow2(g, &lib.caps)? {
                v.notes.push("Sylow 2-subgroup is cyclic: every class fails cancellation".into());
            } else {
                v.notes.push("Sylow 2-subgroup is not cyclic: kernel-group classes fail cancellation".into());
            }
        } else {
            v.trace.push(entry("P3", "periodic cohomology and m_H >= 4: every class fails", None, None));
            v.notes.push("total non-cancellation".into());
        }
    }
    Ok(v)
}

/// Both sides of the `T~ x C2` criterion for a cover of `T~ x C2`.
#[derive(Clone, Debug)]
pub struct TxC2Report {
    pub eichler_quotient: Option<QuotientWitness>,
    pub blockers: Vec<(String, QuotientWitness)>,
}

impl TxC2Report {
    pub fn agrees(&self) -> bool {
        self.eichler_quotient.is_some() == self.blockers.is_empty()
    }
}

pub fn txc2_equivalence_check(g: &GroupInfo, lib: &Library) -> Result<TxC2Report> {
    let t = lib.get("BT x C(2)")?;
    if has_quotient(g, &t, &lib.caps)?.is_none() {
        return Err(Error::NoSuchQuotient(t.name.clone()));
    }
    let eichler_quotient = is_eichler_quotient(g, &t, &lib.caps)?;
    let mut blockers: Vec<(String, QuotientWitness)> =
        quaternion_quotients(g, 6, lib)?.into_iter().map(|(n, w)| (format!("Q({})", 4 * n), w)).collect();
    blockers.extend(quotients_among(g, &FactTables::TXC2_BLOCKERS, lib)?);
    Ok(TxC2Report { eichler_quotient, blockers })
}

#[cfg(test)]
mod verdict_tests {
    use super::*;

    fn status(e: &str) -> Status {
        let lib = Library::default();
        classify(&lib.get(e).unwrap(), &lib).unwrap().status
    }

    #[test]
    fn general() {
        assert_eq!(status("Q(8)"), Status::Pc);
        assert_eq!(status("Q(24)"), Status::FailsSfc);
        assert_eq!(status("SG(32,14)"), Status::FailsSfc);
        assert_eq!(status("BT x C(2)"), Status::Pc);
        assert_eq!(status("SG(96,66)"), Status::SfcHoldsPcOpen);
        assert_eq!(status("SG(384,18129)"), Status::Open);
        assert_eq!(status("C(6)"), Status::Pc);
    }

    #[test]
    fn modes() {
        let lib = Library::default();
        let two = |e: &str| classify_two_group(&lib.get(e).unwrap(), &lib).unwrap().status;
        assert_eq!(two("C(16)"), Status::Pc);
        assert_eq!(two("Q(32)"), Status::FailsSfc);
        assert_eq!(two("Q(16) x C(2)"), Status::FailsSfc);
        assert!(matches!(classify_two_group(&lib.get("C(6)").unwrap(), &lib), Err(Error::NotATwoGroup)));
        let c22 = |e: &str| classify_c22(&lib.get(e).unwrap(), &lib).unwrap().status;
        assert_eq!(c22("Q(8)"), Status::Pc);
        assert_eq!(c22("Q(8) x C(2)"), Status::FailsSfc);
        assert_eq!(c22("Q(24)"), Status::FailsSfc);
        assert!(matches!(classify_c22(&lib.get("Q(12)").unwrap(), &lib), Err(Error::NoC22Quotient)));
        let q28 = classify_periodic(&lib.get("Q(28)").unwrap(), &lib).unwrap();
        assert_eq!(q28.status, Status::FailsSfc);
        assert!(q28.notes[0].contains("every class"));
        assert_eq!(classify_periodic(&lib.get("Q(20)").unwrap(), &lib).unwrap().status, Status::Pc);
        assert!(matches!(classify_periodic(&lib.get("Q(8) x C(2)").unwrap(), &lib), Err(Error::NotPeriodic)));
    }

    #[test]
    fn txc2() {
        let lib = Library::default();
        let r = txc2_equivalence_check(&lib.get("BT x C(2)").unwrap(), &lib).unwrap();
        assert!(r.eichler_quotient.is_some() && r.blockers.is_empty());
        let r = txc2_equivalence_check(&lib.get("BT x C(2) x C(2)").unwrap(), &lib).unwrap();
        assert!(r.eichler_quotient.is_none() && !r.blockers.is_empty());
        let r = txc2_equivalence_check(&lib.get("BT x Q(12)").unwrap(), &lib).unwrap();
        assert!(r.agrees() && r.eichler_quotient.is_none());
    }

    #[test]
    fn target_lists() {
        assert_eq!(pc_targets(48), ["C(1)", "Q(8)", "Q(12)", "Q(16)", "BT", "BO"]);
        let t = pc_targets(576 * 120);
        assert!(t.contains(&"BT x BT x BI".to_string()));
        assert_eq!(pc_targets(240), ["C(1)", "Q(8)", "Q(12)", "Q(16)", "Q(20)", "BT", "BO", "BI"]);
        assert_eq!(q8_by_tn(2), "SD(Q(8), BT x BT; b, a*b; a, b; b, a*b; a, b)");
    }
}
