//! Eichler-type predicates on quotients, binary polyhedral quotients and
//! periodic cohomology.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Result;
use crate::info::{Caps, GroupInfo, NormalSubgroup};
use crate::quotient::{class_reps, has_quotient, quotient_is, QuotientWitness};
use crate::zoo::build_str;

type Map = BTreeMap<String, Arc<GroupInfo>>;

#[cfg(any(test, feature = "std"))]
struct Cache(std::sync::Mutex<Map>);

#[cfg(any(test, feature = "std"))]
impl Cache {
    fn new() -> Self {
        Cache(std::sync::Mutex::new(Map::new()))
    }
    fn with<R>(&self, f: impl FnOnce(&mut Map) -> R) -> R {
        f(&mut self.0.lock().unwrap_or_else(|e| e.into_inner()))
    }
}

#[cfg(not(any(test, feature = "std")))]
struct Cache(core::cell::RefCell<Map>);

#[cfg(not(any(test, feature = "std")))]
impl Cache {
    fn new() -> Self {
        Cache(core::cell::RefCell::new(Map::new()))
    }
    fn with<R>(&self, f: impl FnOnce(&mut Map) -> R) -> R {
        f(&mut self.0.borrow_mut())
    }
}

/// Builds and caches target groups by expression. Shareable across threads
/// with the `std` feature.
pub struct Library {
    pub caps: Caps,
    cache: Cache,
}

impl Library {
    pub fn new(caps: Caps) -> Self {
        Library { caps, cache: Cache::new() }
    }

    pub fn get(&self, expr: &str) -> Result<Arc<GroupInfo>> {
        if let Some(g) = self.cache.with(|m| m.get(expr).cloned()) {
            return Ok(g);
        }
        let g = Arc::new(GroupInfo::new(&build_str(expr)?, &self.caps)?);
        Ok(self.cache.with(|m| m.entry(expr.into()).or_insert(g).clone()))
    }

    /// `Q_{4n}`.
    pub fn quaternion(&self, n: u64) -> Result<Arc<GroupInfo>> {
        self.get(&format!("Q({})", 4 * n))
    }

    /// Insert an already built group under `expr`.
    pub fn insert(&self, expr: &str, g: Arc<GroupInfo>) {
        self.cache.with(|m| m.insert(expr.into(), g));
    }
}

impl Default for Library {
    fn default() -> Self {
        Library::new(Caps::default())
    }
}

/// `G` satisfies the Eichler condition: no degree-2 quaternionic characters.
pub fn is_eichler(g: &GroupInfo) -> bool {
    g.m_quaternionic() == 0
}

/// `G ↠ H` with `m_H(G) = m_H(H)`.
pub fn is_eichler_quotient(g: &GroupInfo, h: &GroupInfo, caps: &Caps) -> Result<Option<QuotientWitness>> {
    if g.m_quaternionic() != h.m_quaternionic() {
        return Ok(None);
    }
    has_quotient(g, h, caps)
}

/// Minimal nontrivial normal subgroups.
pub fn minimal_normal_subgroups(g: &GroupInfo) -> Vec<&NormalSubgroup> {
    let nontrivial: Vec<&NormalSubgroup> = g.lattice.iter().filter(|n| n.order > 1).collect();
    nontrivial
        .iter()
        .filter(|n| !nontrivial.iter().any(|m| m.order < n.order && m.classes.is_subset(&n.classes)))
        .copied()
        .collect()
}

/// No proper quotient keeps `m_H`. Since `m_H` can only drop along
/// quotients, minimal normal subgroups suffice.
pub fn is_eichler_simple(g: &GroupInfo) -> bool {
    minimal_normal_subgroups(g).iter().all(|n| g.quotient_m_quaternionic(&n.classes) < g.m_quaternionic())
}

/// `G` has a quotient isomorphic to a member of `s` with the same `m_H`.
/// Returns the member index and witness.
pub fn is_s_eichler(g: &GroupInfo, s: &[Arc<GroupInfo>], caps: &Caps) -> Result<Option<(usize, QuotientWitness)>> {
    let mh = g.m_quaternionic();
    for (i, h) in s.iter().enumerate() {
        if h.m_quaternionic() != mh || g.order % h.order != 0 {
            continue;
        }
        let want = g.order / h.order;
        for m in g.lattice.iter().filter(|m| m.order == want) {
            if g.quotient_m_quaternionic(&m.classes) != mh {
                continue;
            }
            if let Some(cert) = quotient_is(g, m, h, caps)? {
                return Ok(Some((
                    i,
                    QuotientWitness {
                        kernel: m.clone(),
                        kernel_generators: class_reps(g, m),
                        index: h.order,
                        target: h.name.clone(),
                        certificate: cert,
                    },
                )));
            }
        }
    }
    Ok(None)
}

/// Values `n >= min_n` with `G ↠ Q_{4n}`.
pub fn quaternion_quotients(g: &GroupInfo, min_n: u64, lib: &Library) -> Result<Vec<(u64, QuotientWitness)>> {
    let mut ns: Vec<u64> = Vec::new();
    for m in &g.lattice {
        let index = g.order / m.order;
        if index % 4 != 0 || index / 4 < min_n.max(2) || ns.contains(&(index / 4)) {
            continue;
        }
        let n = index / 4;
        // cheap character-level screen before building Q_{4n}
        let ch = g.quotient_characters(&m.classes);
        if ch.len() as u64 == n + 3
            && ch.iter().filter(|&&c| g.table.degrees[c] == 1).count() == 4
            && g.quotient_m_quaternionic(&m.classes) == n / 2
        {
            ns.push(n);
        }
    }
    ns.sort_unstable();
    let mut out = Vec::new();
    for n in ns {
        if let Some(w) = has_quotient(g, &*lib.quaternion(n)?, &lib.caps)? {
            out.push((n, w));
        }
    }
    Ok(out)
}

/// Binary polyhedral quotients (`Q_{4n}` for n >= 2, `T~`, `O~`, `I~`) by
/// name, with witnesses.
pub fn binary_polyhedral_quotients(g: &GroupInfo, lib: &Library) -> Result<Vec<(String, QuotientWitness)>> {
    let mut out: Vec<(String, QuotientWitness)> = quaternion_quotients(g, 2, lib)?
        .into_iter()
        .map(|(n, w)| (format!("Q({})", 4 * n), w))
        .collect();
    for name in ["BT", "BO", "BI"] {
        if let Some(w) = has_quotient(g, &*lib.get(name)?, &lib.caps)? {
            out.push((name.into(), w));
        }
    }
    Ok(out)
}

/// The binary polyhedral quotients that are not quotients of another one.
pub fn maximal_binary_polyhedral_quotients(g: &GroupInfo, lib: &Library) -> Result<Vec<String>> {
    let all = binary_polyhedral_quotients(g, lib)?;
    let mut out = Vec::new();
    for (i, (a, _)) in all.iter().enumerate() {
        let ga = lib.get(a)?;
        let mut dominated = false;
        for (j, (b, _)) in all.iter().enumerate() {
            if i != j {
                let gb = lib.get(b)?;
                if gb.order > ga.order && has_quotient(&gb, &ga, &lib.caps)?.is_some() {
                    dominated = true;
                    break;
                }
            }
        }
        if !dominated {
            out.push(a.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum SylowKind {
    Trivial,
    Cyclic,
    Quaternion,
    Other,
}

fn sylow_kind(g: &GroupInfo, p: u64, caps: &Caps) -> Result<SylowKind> {
    if let Some(c) = g.concrete() {
        if g.order % p != 0 {
            return Ok(SylowKind::Trivial);
        }
        let s = c.group.sylow_subgroup(p, caps.enumeration_cap)?;
        return Ok(if s.is_cyclic(caps.enumeration_cap)? {
            SylowKind::Cyclic
        } else if p == 2 && s.is_generalized_quaternion(caps.enumeration_cap)? {
            SylowKind::Quaternion
        } else {
            SylowKind::Other
        });
    }
    let mut acc = SylowKind::Trivial;
    for f in g.factors() {
        let k = sylow_kind(f, p, caps)?;
        acc = match (acc, k) {
            (a, SylowKind::Trivial) => a,
            (SylowKind::Trivial, b) => b,
            _ => SylowKind::Other,
        };
    }
    Ok(acc)
}

/// Periodic cohomology: every Sylow subgroup is cyclic or generalized
/// quaternion.
pub fn has_periodic_cohomology(g: &GroupInfo, caps: &Caps) -> Result<bool> {
    for p in crate::util::prime_factors(g.order) {
        if sylow_kind(g, p, caps)? == SylowKind::Other {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Sylow 2-subgroup is cyclic.
pub fn has_cyclic_sylow2(g: &GroupInfo, caps: &Caps) -> Result<bool> {
    Ok(matches!(sylow_kind(g, 2, caps)?, SylowKind::Cyclic | SylowKind::Trivial))
}
