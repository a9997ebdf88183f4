//! Non-Eichler covers, catalog-restricted MNEC membership and the level
//! graph built from `C1`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::eichler::{is_s_eichler, minimal_normal_subgroups, Library};
use crate::error::{Error, Result};
use crate::info::{Caps, GroupInfo, NormalSubgroup};
use crate::quotient::{has_quotient, is_isomorphic, quotient_kernels, QuotientWitness};

/// `G ↠ H` and `m_H(G) > m_H(H)`.
pub fn is_non_eichler_cover(g: &GroupInfo, h: &GroupInfo, caps: &Caps) -> Result<bool> {
    if g.m_quaternionic() <= h.m_quaternionic() {
        return Ok(false);
    }
    Ok(has_quotient(g, h, caps)?.is_some())
}

/// `G` is a non-Eichler cover of `H` and no proper quotient of `G` is.
///
/// A proper quotient `G/N` covering `H` factors through some kernel `M`
/// with `G/M ≅ H`; as `m_H` only drops along quotients it is enough to try
/// minimal normal `N ⊆ M`.
pub fn is_minimal_nec(g: &GroupInfo, h: &GroupInfo, caps: &Caps) -> Result<bool> {
    let mh = h.m_quaternionic();
    if g.m_quaternionic() <= mh {
        return Ok(false);
    }
    let kernels = quotient_kernels(g, h, caps)?;
    if kernels.is_empty() {
        return Ok(false);
    }
    let minimal = minimal_normal_subgroups(g);
    for m in kernels {
        for n in minimal.iter().filter(|n| n.classes.is_subset(&m.classes)) {
            if g.quotient_m_quaternionic(&n.classes) > mh {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Kernels `M` with `G/M` isomorphic to a member of `s`, tagged with the
/// member index.
fn s_kernels<'g>(g: &'g GroupInfo, s: &[Arc<GroupInfo>], caps: &Caps) -> Result<Vec<(&'g NormalSubgroup, usize)>> {
    let mut out = Vec::new();
    for (i, h) in s.iter().enumerate() {
        for m in quotient_kernels(g, h, caps)? {
            out.push((m, i));
        }
    }
    Ok(out)
}

/// `G ∈ MNEC(S)`: `G` maps onto a member of `S`, is not `S`-Eichler, and
/// every proper quotient mapping onto a member of `S` is `S`-Eichler.
pub fn is_mnec(g: &GroupInfo, s: &[Arc<GroupInfo>], caps: &Caps) -> Result<bool> {
    let ks = s_kernels(g, s, caps)?;
    if ks.is_empty() {
        return Ok(false);
    }
    let mh = g.m_quaternionic();
    if ks.iter().any(|(m, _)| g.quotient_m_quaternionic(&m.classes) == mh) {
        return Ok(false);
    }
    for n in g.lattice.iter().filter(|n| n.order > 1 && n.order < g.order) {
        let above: Vec<&NormalSubgroup> =
            ks.iter().filter(|(m, _)| n.classes.is_subset(&m.classes)).map(|(m, _)| *m).collect();
        if above.is_empty() {
            continue;
        }
        let mn = g.quotient_m_quaternionic(&n.classes);
        if !above.iter().any(|m| g.quotient_m_quaternionic(&m.classes) == mn) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Known-failure exclusions: optionally the family `Q_{4n}`, `n >= min_n`,
/// plus explicit members.
#[derive(Clone, Default)]
pub struct ExclusionSet {
    pub quaternion_min_n: Option<u64>,
    pub members: Vec<Arc<GroupInfo>>,
}

/// Expressions for the explicit members of the full exclusion set.
pub const EXCLUDED_GROUPS: [&str; 11] = [
    "Q(8) x C(2)",
    "Q(12) x C(2)",
    "Q(16) x C(2)",
    "Q(20) x C(2)",
    "BT x C(2) x C(2)",
    "BO x C(2)",
    "BI x C(2)",
    "SG(32,14)",
    "SG(36,7)",
    "SG(64,14)",
    "SG(100,7)",
];

impl ExclusionSet {
    /// `B_1`, `B_2`, and `B_n` for `n >= 3`.
    pub fn level(n: usize, lib: &Library) -> Result<Self> {
        let mut b = ExclusionSet { quaternion_min_n: Some(6), members: Vec::new() };
        if n >= 2 {
            for e in EXCLUDED_GROUPS {
                if n == 2 && e == "BT x C(2) x C(2)" {
                    continue;
                }
                b.members.push(lib.get(e)?);
            }
        }
        Ok(b)
    }

    pub fn names(&self) -> Vec<String> {
        let mut out: Vec<String> = self.quaternion_min_n.iter().map(|n| format!("Q(4n), n >= {}", n)).collect();
        out.extend(self.members.iter().map(|m| m.name.clone()));
        out
    }

    pub fn contains(&self, g: &GroupInfo, lib: &Library) -> Result<bool> {
        if let Some(n0) = self.quaternion_min_n {
            if quaternion_parameter(g, lib)?.is_some_and(|n| n >= n0) {
                return Ok(true);
            }
        }
        for m in &self.members {
            if m.order == g.order && is_isomorphic(g, m, &lib.caps)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `Some(n)` when `G ≅ Q_{4n}`.
pub fn quaternion_parameter(g: &GroupInfo, lib: &Library) -> Result<Option<u64>> {
    if g.order % 4 != 0 || g.order < 8 {
        return Ok(None);
    }
    let n = g.order / 4;
    let linear = g.table.degrees.iter().filter(|&&d| d == 1).count();
    if g.class_count() as u64 != n + 3 || linear != 4 || g.m_quaternionic() != n / 2 {
        return Ok(None);
    }
    Ok(is_isomorphic(g, &*lib.quaternion(n)?, &lib.caps)?.then_some(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphNode {
    pub name: String,
    pub order: u64,
    pub m_quaternionic: u64,
    pub level: usize,
    /// Member of the exclusion set of its level (listed, not expanded).
    pub excluded: bool,
    /// Filled in by callers that classify the nodes.
    pub status: Option<String>,
}

/// Level graph; `edges` hold node indices `(from, to)` with `from` a minimal
/// non-Eichler cover of `to`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EichlerGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<(usize, usize)>,
}

impl EichlerGraph {
    pub fn level(&self, n: usize) -> impl Iterator<Item = &GraphNode> {
        self.nodes.iter().filter(move |x| x.level == n)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|x| x.name == name)
    }

    /// Names of the targets of edges leaving `name`.
    pub fn edges_from(&self, name: &str) -> Vec<&str> {
        let Some(i) = self.index_of(name) else { return Vec::new() };
        self.edges.iter().filter(|e| e.0 == i).map(|e| self.nodes[e.1].name.as_str()).collect()
    }

    /// Graphviz rendering; nodes coloured by status when known.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gamma {\n  rankdir=RL;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let color = match n.status.as_deref() {
                Some("PC") => "palegreen",
                Some("FAILS_SFC") => "lightcoral",
                Some("SFC_HOLDS_PC_OPEN") => "khaki",
                Some(_) => "lightgrey",
                None => "white",
            };
            s += &format!(
                "  n{} [label=\"{}\\nm_H={}\", style=filled, fillcolor={}, group=L{}];\n",
                i,
                n.name.replace('"', "\\\""),
                n.m_quaternionic,
                color,
                n.level
            );
        }
        for &(a, b) in &self.edges {
            s += &format!("  n{} -> n{};\n", a, b);
        }
        s += "}\n";
        s
    }
}

/// Levels by iterated MNEC from `C1` over a catalog; `catalog[i]` are
/// candidates, names taken from `GroupInfo::name`. The predicate `mnec`
/// decides `G ∈ MNEC(S)` for each candidate (so callers can run it in
/// parallel); [`gamma_levels`] is the sequential default.
pub fn gamma_levels_with<F>(catalog: &[Arc<GroupInfo>], depth: usize, lib: &Library, mut mnec: F) -> Result<EichlerGraph>
where
    F: FnMut(&[usize], &[Arc<GroupInfo>]) -> Result<Vec<bool>>,
{
    let never = ExclusionSet::level(1, lib)?;
    let mut level: Vec<Option<usize>> = vec![None; catalog.len()];
    let mut excluded = vec![false; catalog.len()];
    let mut skip = vec![false; catalog.len()];
    for (i, g) in catalog.iter().enumerate() {
        if g.order == 1 {
            level[i] = Some(0);
        } else if never.contains(g, lib)? {
            skip[i] = true;
        }
    }
    let mut trivial: Option<Arc<GroupInfo>> = None;
    if !level.contains(&Some(0)) {
        trivial = Some(lib.get("C(1)")?);
    }
    for k in 1..=depth {
        let mut s: Vec<Arc<GroupInfo>> = Vec::new();
        for (i, g) in catalog.iter().enumerate() {
            if level[i] == Some(k - 1) && !excluded[i] {
                s.push(g.clone());
            }
        }
        if k == 1 {
            s.extend(trivial.iter().cloned());
        }
        if s.is_empty() {
            break;
        }
        let cands: Vec<usize> = (0..catalog.len()).filter(|&i| level[i].is_none() && !skip[i]).collect();
        let hits = mnec(&cands, &s)?;
        let bk = ExclusionSet::level(k, lib)?;
        for (&i, hit) in cands.iter().zip(hits) {
            if hit {
                level[i] = Some(k);
                excluded[i] = bk.contains(&catalog[i], lib)?;
            }
        }
    }
    let mut idx: Vec<usize> = (0..catalog.len()).filter(|&i| level[i].is_some()).collect();
    idx.sort_by(|&a, &b| (level[a], catalog[a].order, &catalog[a].name).cmp(&(level[b], catalog[b].order, &catalog[b].name)));
    let mut graph = EichlerGraph::default();
    if let Some(t) = &trivial {
        graph.nodes.push(GraphNode {
            name: t.name.clone(),
            order: 1,
            m_quaternionic: 0,
            level: 0,
            excluded: false,
            status: None,
        });
    }
    let mut infos: Vec<Arc<GroupInfo>> = trivial.into_iter().collect();
    for &i in &idx {
        graph.nodes.push(GraphNode {
            name: catalog[i].name.clone(),
            order: catalog[i].order,
            m_quaternionic: catalog[i].m_quaternionic(),
            level: level[i].unwrap(),
            excluded: excluded[i],
            status: None,
        });
        infos.push(catalog[i].clone());
    }
    for a in 0..graph.nodes.len() {
        for b in 0..graph.nodes.len() {
            if graph.nodes[b].level < graph.nodes[a].level && is_minimal_nec(&infos[a], &infos[b], &lib.caps)? {
                graph.edges.push((a, b));
            }
        }
    }
    Ok(graph)
}

pub fn gamma_levels(catalog: &[Arc<GroupInfo>], depth: usize, lib: &Library) -> Result<EichlerGraph> {
    let caps = lib.caps;
    gamma_levels_with(catalog, depth, lib, |cands, s| cands.iter().map(|&i| is_mnec(&catalog[i], s, &caps)).collect())
}

/// Both sides of "G is S-Eichler iff G has no quotient in MNEC(S)".
#[derive(Clone, Debug)]
pub struct FundamentalLemmaReport {
    pub s_eichler: Option<(String, QuotientWitness)>,
    pub mnec_quotient: Option<(String, QuotientWitness)>,
}

impl FundamentalLemmaReport {
    pub fn agrees(&self) -> bool {
        self.s_eichler.is_some() != self.mnec_quotient.is_some()
    }
}

/// Check `S` is closed under quotients within `universe`, then evaluate both
/// sides of the lemma for `G`.
pub fn fundamental_lemma_check(
    g: &GroupInfo,
    s: &[Arc<GroupInfo>],
    mnec_s: &[Arc<GroupInfo>],
    universe: &[Arc<GroupInfo>],
    caps: &Caps,
) -> Result<FundamentalLemmaReport> {
    for h in s {
        for u in universe {
            if u.order >= h.order || h.order % u.order != 0 {
                continue;
            }
            let mut in_s = false;
            for t in s.iter().filter(|t| t.order == u.order) {
                if is_isomorphic(u, t, caps)? {
                    in_s = true;
                    break;
                }
            }
            if !in_s && has_quotient(h, u, caps)?.is_some() {
                return Err(Error::NotQuotientClosed(format!("{} maps onto {}", h.name, u.name)));
            }
        }
    }
    let s_eichler = is_s_eichler(g, s, caps)?.map(|(i, w)| (s[i].name.clone(), w));
    let mut mnec_quotient = None;
    for q in mnec_s {
        if let Some(w) = has_quotient(g, q, caps)? {
            mnec_quotient = Some((q.name.clone(), w));
            break;
        }
    }
    Ok(FundamentalLemmaReport { s_eichler, mnec_quotient })
}
