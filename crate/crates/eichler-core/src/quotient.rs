//! Quotient groups, isomorphism testing and quotient detection.
//!
//! A quotient `G/M` of a direct product `G = F_1 x ... x F_k` is built as
//! `P/D` with `P = prod F_i/M_i`, `M_i = M ∩ F_i`. The correction `D` is
//! central in `P` (it meets every factor trivially), so elements are tuples
//! of factor cosets reduced to the least representative of their `D`-coset.
//! Quotients too large to enumerate are compared through their direct
//! decompositions, which are read off the normal subgroup lattice.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::info::{Caps, ClassSet, Concrete, Fingerprint, GroupInfo, NormalSubgroup};
use crate::perm::Permutation;

/// Quotients up to this order are compared directly; larger ones by parts.
pub const DIRECT_ISO_LIMIT: u64 = 3000;

struct FactorQuotient<'a> {
    c: &'a Concrete,
    labels: Vec<u32>,
    reps: Vec<u32>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
}

impl<'a> FactorQuotient<'a> {
    fn new(c: &'a Concrete, kernel: &ClassSet) -> Self {
        let n = c.len();
        let kelems: Vec<u32> = (0..n as u32).filter(|&e| kernel.contains(c.classes.class_of_index(e))).collect();
        let mut labels = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for e in 0..n as u32 {
            if labels[e as usize] != u32::MAX {
                continue;
            }
            let l = reps.len() as u32;
            reps.push(e);
            for &b in &kelems {
                labels[c.mul(e, b) as usize] = l;
            }
        }
        let inv = reps.iter().map(|&r| labels[c.inverse[r as usize] as usize]).collect();
        let mut fq = FactorQuotient { c, labels, reps, table: None, inv };
        let q = fq.reps.len();
        if q <= 1500 {
            let mut t = Vec::with_capacity(q * q);
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    t.push(fq.mul_slow(a, b));
                }
            }
            fq.table = Some(t);
        }
        fq
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        self.labels[self.c.mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => self.mul_slow(a, b),
        }
    }
}

/// An enumerated quotient `G/M`.
pub struct QuotientGroup<'a> {
    info: &'a GroupInfo,
    pub kernel: NormalSubgroup,
    parts: Vec<FactorQuotient<'a>>,
    central: Vec<Vec<u32>>,
    coords: Vec<u32>,
    index: HashMap<u64, u32>,
    radix: Vec<u64>,
    generators: Vec<u32>,
    orders: Vec<u32>,
    cayley: Option<Vec<u32>>,
}

impl<'a> QuotientGroup<'a> {
    pub fn new(info: &'a GroupInfo, kernel: &NormalSubgroup, caps: &Caps) -> Result<Self> {
        let size = info.order / kernel.order;
        if size > caps.enumeration_cap {
            return Err(Error::ResourceExceeded { what: "quotient enumeration", limit: caps.enumeration_cap });
        }
        let factors = info.factors();
        let k = factors.len();
        let mut parts = Vec::with_capacity(k);
        for (i, f) in factors.iter().enumerate() {
            let rf = f.class_count();
            let local = ClassSet::from_indices(
                rf,
                (0..rf).filter(|&c| {
                    let mut d = vec![0; k];
                    d[i] = c;
                    kernel.classes.contains(info.from_digits(&d))
                }),
            );
            parts.push(FactorQuotient::new(f.concrete().expect("concrete factor"), &local));
        }
        let mut radix = vec![1u64; k];
        for i in (0..k.saturating_sub(1)).rev() {
            radix[i] = radix[i + 1] * parts[i + 1].len() as u64;
        }
        // central correction: tuples of central cosets whose lifts lie in M
        let centers: Vec<Vec<u32>> = parts
            .iter()
            .map(|p| {
                let gl: Vec<u32> = p.c.generators.iter().map(|&g| p.labels[g as usize]).collect();
                (0..p.len() as u32).filter(|&z| gl.iter().all(|&g| p.mul(z, g) == p.mul(g, z))).collect()
            })
            .collect();
        let total: u64 = centers.iter().map(|c| c.len() as u64).product();
        if total > caps.enumeration_cap {
            return Err(Error::ResourceExceeded { what: "central correction", limit: caps.enumeration_cap });
        }
        let mut central = Vec::new();
        let mut tuple = vec![0usize; k];
        loop {
            let t: Vec<u32> = (0..k).map(|i| centers[i][tuple[i]]).collect();
            let lift: Vec<u32> = (0..k).map(|i| parts[i].reps[t[i] as usize]).collect();
            if kernel.classes.contains(info.class_of_elements(&lift)) {
                central.push(t);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < centers[i].len() {
                    break;
                }
                tuple[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX || k == 0 {
                break;
            }
        }
        let mut q = QuotientGroup {
            info,
            kernel: kernel.clone(),
            parts,
            central,
            coords: Vec::new(),
            index: HashMap::new(),
            radix,
            generators: Vec::new(),
            orders: Vec::new(),
            cayley: None,
        };
        let p_order: u64 = q.parts.iter().map(|p| p.len() as u64).product();
        if p_order != size * q.central.len() as u64 {
            return Err(Error::Validation {
                name: "quotient".into(),
                expected: alloc::format!("order {}", size),
                computed: alloc::format!("{} / {}", p_order, q.central.len()),
            });
        }
        q.enumerate();
        if q.len() as u64 != size {
            return Err(Error::Validation {
                name: "quotient".into(),
                expected: alloc::format!("order {}", size),
                computed: alloc::format!("{}", q.len()),
            });
        }
        q.orders = (0..q.len() as u32).map(|x| q.compute_order(x)).collect();
        if q.len() <= 2000 {
            let n = q.len() as u32;
            let mut t = Vec::with_capacity((n * n) as usize);
            for a in 0..n {
                for b in 0..n {
                    t.push(q.mul_slow(a, b));
                }
            }
            q.cayley = Some(t);
        }
        Ok(q)
    }

    /// The group being divided.
    pub fn parent(&self) -> &GroupInfo {
        self.info
    }

    fn k(&self) -> usize {
        self.parts.len()
    }

    fn canonical(&self, t: &[u32]) -> Vec<u32> {
        if self.central.len() <= 1 {
            return t.to_vec();
        }
        let mut best: Option<Vec<u32>> = None;
        for d in &self.central {
            let c: Vec<u32> = (0..self.k()).map(|i| self.parts[i].mul(t[i], d[i])).collect();
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
        best.unwrap()
    }

    fn key(&self, t: &[u32]) -> u64 {
        t.iter().zip(&self.radix).map(|(&a, &r)| a as u64 * r).sum()
    }

    fn lookup(&self, t: &[u32]) -> u32 {
        self.index[&self.key(&self.canonical(t))]
    }

    fn enumerate(&mut self) {
        let k = self.k();
        let id: Vec<u32> = self.parts.iter().map(|p| p.labels[0]).collect();
        let mut gens_t = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            for &g in &p.c.generators {
                let l = p.labels[g as usize];
                if l != id[i] {
                    let mut t = id.clone();
                    t[i] = l;
                    gens_t.push(t);
                }
            }
        }
        let start = self.canonical(&id);
        self.index.insert(self.key(&start), 0);
        self.coords.extend_from_slice(&start);
        let mut gens_idx = Vec::new();
        let mut i = 0;
        while i < self.coords.len() / k.max(1) {
            let x: Vec<u32> = self.coords[i * k..(i + 1) * k].to_vec();
            for g in &gens_t {
                let y: Vec<u32> = (0..k).map(|j| self.parts[j].mul(x[j], g[j])).collect();
                let y = self.canonical(&y);
                let key = self.key(&y);
                if !self.index.contains_key(&key) {
                    self.index.insert(key, (self.coords.len() / k) as u32);
                    self.coords.extend_from_slice(&y);
                }
            }
            i += 1;
            if k == 0 {
                break;
            }
        }
        for g in &gens_t {
            let gi = self.lookup(g);
            if gi != 0 && !gens_idx.contains(&gi) {
                gens_idx.push(gi);
            }
        }
        self.generators = gens_idx;
    }

    pub fn len(&self) -> usize {
        if self.k() == 0 {
            1
        } else {
            self.coords.len() / self.k()
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    fn tuple(&self, x: u32) -> &[u32] {
        let k = self.k();
        &self.coords[x as usize * k..(x as usize + 1) * k]
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let t: Vec<u32> = (0..self.k()).map(|i| self.parts[i].mul(ta[i], tb[i])).collect();
        self.lookup(&t)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.cayley {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        let ta = self.tuple(a);
        let t: Vec<u32> = (0..self.k()).map(|i| self.parts[i].inv[ta[i] as usize]).collect();
        self.lookup(&t)
    }

    fn compute_order(&self, x: u32) -> u32 {
        let mut y = x;
        let mut o = 1;
        while y != 0 {
            y = self.mul_slow(y, x);
            o += 1;
        }
        o
    }

    pub fn order_of(&self, x: u32) -> u32 {
        self.orders[x as usize]
    }

    /// A permutation of `G` in the coset `x`.
    pub fn representative(&self, x: u32) -> Permutation {
        let t = self.tuple(x);
        let degree: usize = self.parts.iter().map(|p| p.c.group.degree()).sum();
        let mut images = Vec::with_capacity(degree);
        for (i, p) in self.parts.iter().enumerate() {
            let off = images.len() as u32;
            let e = p.c.element(p.reps[t[i] as usize]);
            images.extend(e.images().iter().map(|&v| v + off));
        }
        Permutation::from_images(images).expect("disjoint blocks")
    }

    /// The regular permutation representation of the quotient (degree = index).
    pub fn regular_representation(&self) -> Result<crate::perm::PermGroup> {
        let n = self.len();
        let gens = self
            .generators
            .iter()
            .map(|&g| Permutation::from_images((0..n as u32).map(|x| self.mul(x, g)).collect()))
            .collect::<Result<Vec<_>>>()?;
        crate::perm::PermGroup::new(n, gens)
    }

    /// Class id of every element, and class sizes.
    fn classes(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.len();
        let ginv: Vec<(u32, u32)> = self.generators.iter().map(|&g| (g, self.inv(g))).collect();
        let mut cls = vec![u32::MAX; n];
        let mut sizes = Vec::new();
        for x in 0..n as u32 {
            if cls[x as usize] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            cls[x as usize] = id;
            let mut orbit = vec![x];
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for &(g, gi) in &ginv {
                    let z = self.mul(self.mul(gi, y), g);
                    if cls[z as usize] == u32::MAX {
                        cls[z as usize] = id;
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            sizes.push(orbit.len() as u32);
        }
        (cls, sizes)
    }

    fn subgroup_size(&self, gens: &[u32]) -> usize {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut q = vec![0u32];
        let mut i = 0;
        while i < q.len() {
            for &g in gens {
                let y = self.mul(q[i], g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    q.push(y);
                }
            }
            i += 1;
        }
        q.len()
    }

    /// A short generating sequence chosen greedily and deterministically.
    pub fn small_generating_set(&self) -> Vec<u32> {
        let n = self.len();
        if n == 1 {
            return Vec::new();
        }
        let mut cands: Vec<u32> = if n <= 256 {
            (1..n as u32).collect()
        } else {
            let mut s = 0x9e37_79b9_7f4a_7c15u64;
            (0..96)
                .map(|_| {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    1 + (s % (n as u64 - 1)) as u32
                })
                .collect()
        };
        cands.extend_from_slice(&self.generators);
        cands.sort_by_key(|&x| (core::cmp::Reverse(self.order_of(x)), x));
        cands.dedup();
        let mut gens = Vec::new();
        let mut size = 1;
        while size < n {
            let mut best = (size, u32::MAX);
            for &c in &cands {
                let mut t = gens.clone();
                t.push(c);
                let s = self.subgroup_size(&t);
                if s > best.0 {
                    best = (s, c);
                    if s == n {
                        break;
                    }
                }
            }
            if best.1 == u32::MAX {
                // sample missed: fall back to the defining generators
                return self.generators.clone();
            }
            gens.push(best.1);
            size = best.0;
        }
        gens
    }
}

/// Outcome of a successful isomorphism search: images of `sources` in the
/// second group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    pub sources: Vec<u32>,
    pub images: Vec<u32>,
}

fn histogram(q: &QuotientGroup) -> Vec<u32> {
    let mut h: Vec<u32> = q.orders.clone();
    h.sort_unstable();
    h
}

/// Isomorphism search from `h` to `b`.
pub fn isomorphism(h: &QuotientGroup, b: &QuotientGroup, budget: u64) -> Result<Option<GeneratorMap>> {
    if h.len() != b.len() || histogram(h) != histogram(b) {
        return Ok(None);
    }
    let n = h.len();
    if n == 1 {
        return Ok(Some(GeneratorMap { sources: Vec::new(), images: Vec::new() }));
    }
    let (hc, hs) = h.classes();
    let (bc, bs) = b.classes();
    let mut hsz: Vec<u32> = hs.clone();
    let mut bsz: Vec<u32> = bs.clone();
    hsz.sort_unstable();
    bsz.sort_unstable();
    if hsz != bsz {
        return Ok(None);
    }
    let xs = h.small_generating_set();
    let key_h = |x: u32| (h.order_of(x), hs[hc[x as usize] as usize]);
    let key_b = |y: u32| (b.order_of(y), bs[bc[y as usize] as usize]);
    let mut cands: Vec<Vec<u32>> = Vec::new();
    for (j, &x) in xs.iter().enumerate() {
        let kx = key_h(x);
        let mut seen_class = vec![false; bs.len()];
        let c: Vec<u32> = (0..n as u32)
            .filter(|&y| {
                if key_b(y) != kx {
                    return false;
                }
                if j == 0 {
                    let cl = bc[y as usize] as usize;
                    if seen_class[cl] {
                        return false;
                    }
                    seen_class[cl] = true;
                }
                true
            })
            .collect();
        if c.is_empty() {
            return Ok(None);
        }
        cands.push(c);
    }
    let mut state = Search { h, b, xs: &xs, phi: vec![u32::MAX; n], used: vec![false; n], touched: Vec::new(), budget };
    let mut ys = Vec::new();
    if state.dfs(&cands, &mut ys)? {
        Ok(Some(GeneratorMap { sources: xs.clone(), images: ys }))
    } else {
        Ok(None)
    }
}

struct Search<'s, 'a> {
    h: &'s QuotientGroup<'a>,
    b: &'s QuotientGroup<'a>,
    xs: &'s [u32],
    phi: Vec<u32>,
    used: Vec<bool>,
    touched: Vec<u32>,
    budget: u64,
}

impl Search<'_, '_> {
    fn dfs(&mut self, cands: &[Vec<u32>], ys: &mut Vec<u32>) -> Result<bool> {
        let j = ys.len();
        if j == self.xs.len() {
            return Ok(true);
        }
        for &y in &cands[j] {
            if !self.quick_check(ys, y) {
                continue;
            }
            ys.push(y);
            if self.consistent(ys)? && self.dfs(cands, ys)? {
                return Ok(true);
            }
            ys.pop();
        }
        Ok(false)
    }

    /// Orders of short products must agree.
    fn quick_check(&self, ys: &[u32], y: u32) -> bool {
        let x = self.xs[ys.len()];
        for (i, &yi) in ys.iter().enumerate() {
            let xi = self.xs[i];
            if self.h.order_of(self.h.mul(xi, x)) != self.b.order_of(self.b.mul(yi, y)) {
                return false;
            }
            if self.h.order_of(self.h.mul(xi, self.h.inv(x))) != self.b.order_of(self.b.mul(yi, self.b.inv(y))) {
                return false;
            }
        }
        true
    }

    /// Extend `xs[i] -> ys[i]` over the generated subgroup, checking it is an
    /// injective homomorphism.
    fn consistent(&mut self, ys: &[u32]) -> Result<bool> {
        for &t in &self.touched {
            self.used[self.phi[t as usize] as usize] = false;
            self.phi[t as usize] = u32::MAX;
        }
        self.touched.clear();
        self.phi[0] = 0;
        self.used[0] = true;
        self.touched.push(0);
        let mut i = 0;
        while i < self.touched.len() {
            let x = self.touched[i];
            for (g, &y) in self.xs.iter().zip(ys) {
                if self.budget == 0 {
                    return Err(Error::ResourceExceeded { what: "isomorphism search", limit: 0 });
                }
                self.budget -= 1;
                let hx = self.h.mul(x, *g);
                let by = self.b.mul(self.phi[x as usize], y);
                let cur = self.phi[hx as usize];
                if cur == u32::MAX {
                    if self.used[by as usize] {
                        return Ok(false);
                    }
                    self.phi[hx as usize] = by;
                    self.used[by as usize] = true;
                    self.touched.push(hx);
                } else if cur != by {
                    return Ok(false);
                }
            }
            i += 1;
        }
        Ok(true)
    }
}

/// Kernels `B_j ⊇ M` with `G/M ≅ prod G/B_j` and every `G/B_j` directly
/// indecomposable.
pub fn decompose(info: &GroupInfo, m: &NormalSubgroup) -> Vec<NormalSubgroup> {
    let above: Vec<&NormalSubgroup> = info.above(m).filter(|a| a.order != m.order && a.order != info.order).collect();
    for a in &above {
        for b in &above {
            if a.order * b.order == info.order * m.order && a.classes.intersect(&b.classes) == m.classes {
                let mut out = decompose(info, a);
                out.extend(decompose(info, b));
                return out;
            }
        }
    }
    vec![m.clone()]
}

/// How a quotient was identified with its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Target generators and coset representatives of their images in `G`.
    Generators(Vec<(Permutation, Permutation)>),
    /// Matched direct factors: (kernel in G, kernel in the target, generator map).
    Parts(Vec<(NormalSubgroup, NormalSubgroup, Vec<(Permutation, Permutation)>)>),
}

/// Evidence for `G ↠ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWitness {
    pub kernel: NormalSubgroup,
    /// Class representatives of the kernel (its normal generators).
    pub kernel_generators: Vec<Permutation>,
    pub index: u64,
    pub target: String,
    pub certificate: Certificate,
}

pub(crate) fn class_reps(info: &GroupInfo, n: &NormalSubgroup) -> Vec<Permutation> {
    let fs = info.factors();
    n.classes
        .indices()
        .into_iter()
        .filter(|&k| k != 0)
        .map(|k| {
            let d = info.digits(k);
            let mut images = Vec::new();
            for (f, &c) in fs.iter().zip(&d) {
                let off = images.len() as u32;
                let rep = &f.concrete().unwrap().classes.representatives[c];
                images.extend(rep.images().iter().map(|&v| v + off));
            }
            Permutation::from_images(images).unwrap()
        })
        .collect()
}

fn target_fingerprint(h: &GroupInfo) -> Fingerprint {
    h.quotient_fingerprint(&h.trivial_subgroup())
}

fn direct_iso(g: &GroupInfo, m: &NormalSubgroup, h: &GroupInfo, hm: &NormalSubgroup, caps: &Caps) -> Result<Option<Vec<(Permutation, Permutation)>>> {
    let qb = QuotientGroup::new(g, m, caps)?;
    let qh = QuotientGroup::new(h, hm, caps)?;
    Ok(isomorphism(&qh, &qb, caps.backtrack_budget)?.map(|map| {
        map.sources.iter().zip(&map.images).map(|(&x, &y)| (qh.representative(x), qb.representative(y))).collect()
    }))
}

/// Decide `G/M ≅ H/HM`, returning a certificate when true.
pub fn quotient_isomorphic_to(
    g: &GroupInfo,
    m: &NormalSubgroup,
    h: &GroupInfo,
    hm: &NormalSubgroup,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    if g.quotient_fingerprint(m) != h.quotient_fingerprint(hm) {
        return Ok(None);
    }
    if g.order / m.order <= DIRECT_ISO_LIMIT {
        return Ok(direct_iso(g, m, h, hm, caps)?.map(Certificate::Generators));
    }
    let gp = decompose(g, m);
    let hp = decompose(h, hm);
    if gp.len() == 1 && hp.len() == 1 {
        return Ok(direct_iso(g, m, h, hm, caps)?.map(Certificate::Generators));
    }
    if gp.len() != hp.len() {
        return Ok(None);
    }
    let mut taken = vec![false; hp.len()];
    let mut matched = Vec::new();
    for a in &gp {
        let fa = g.quotient_fingerprint(a);
        let mut found = None;
        for (j, b) in hp.iter().enumerate() {
            if taken[j] || h.quotient_fingerprint(b) != fa {
                continue;
            }
            if let Some(c) = quotient_isomorphic_to(g, a, h, b, caps)? {
                found = Some((j, c));
                break;
            }
        }
        let Some((j, c)) = found else { return Ok(None) };
        taken[j] = true;
        match c {
            Certificate::Generators(pairs) => matched.push((a.clone(), hp[j].clone(), pairs)),
            Certificate::Parts(inner) => matched.extend(inner),
        }
    }
    Ok(Some(Certificate::Parts(matched)))
}

/// Is `G/M` isomorphic to `H`?
pub fn quotient_is(g: &GroupInfo, m: &NormalSubgroup, h: &GroupInfo, caps: &Caps) -> Result<Option<Certificate>> {
    if g.order / m.order != h.order {
        return Ok(None);
    }
    quotient_isomorphic_to(g, m, h, &h.trivial_subgroup(), caps)
}

/// First kernel (in lattice order) realizing `G ↠ H`.
pub fn has_quotient(g: &GroupInfo, h: &GroupInfo, caps: &Caps) -> Result<Option<QuotientWitness>> {
    if g.order % h.order != 0 {
        return Ok(None);
    }
    let want = g.order / h.order;
    let fp = target_fingerprint(h);
    for m in g.lattice.iter().filter(|m| m.order == want) {
        if g.quotient_fingerprint(m) != fp {
            continue;
        }
        if let Some(cert) = quotient_is(g, m, h, caps)? {
            return Ok(Some(QuotientWitness {
                kernel: m.clone(),
                kernel_generators: class_reps(g, m),
                index: h.order,
                target: h.name.clone(),
                certificate: cert,
            }));
        }
    }
    Ok(None)
}

/// All kernels `M` with `G/M ≅ H`.
pub fn quotient_kernels<'g>(g: &'g GroupInfo, h: &GroupInfo, caps: &Caps) -> Result<Vec<&'g NormalSubgroup>> {
    if g.order % h.order != 0 {
        return Ok(Vec::new());
    }
    let want = g.order / h.order;
    let fp = target_fingerprint(h);
    let mut out = Vec::new();
    for m in g.lattice.iter().filter(|m| m.order == want) {
        if g.quotient_fingerprint(m) == fp && quotient_is(g, m, h, caps)?.is_some() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Re-check a witness from scratch.
pub fn verify_witness(g: &GroupInfo, h: &GroupInfo, w: &QuotientWitness, caps: &Caps) -> Result<bool> {
    if !g.lattice.contains(&w.kernel) || g.order / w.kernel.order != h.order || w.index != h.order {
        return Ok(false);
    }
    Ok(quotient_is(g, &w.kernel, h, caps)?.is_some())
}

/// Is `G` isomorphic to `H`?
pub fn is_isomorphic(g: &GroupInfo, h: &GroupInfo, caps: &Caps) -> Result<bool> {
    Ok(g.order == h.order && quotient_is(g, &g.trivial_subgroup(), h, caps)?.is_some())
}
