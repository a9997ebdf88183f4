//! Permutations and permutation groups.
//!
//! Groups act on the right: `x^(gh) = (x^g)^h`, and `g.compose(h)` applies `g`
//! first. Stabilizer chains are built by a deterministic Schreier-Sims that
//! always extends the base with the lowest moved point.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::util::{gcd, lcm};

/// A bijection of `{0, .., degree - 1}` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Build from an image sequence, checking that it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidSpec("image sequence is not a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles on 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (i, &p) in cyc.iter().enumerate() {
                let p = p as usize;
                if p >= degree || touched[p] {
                    return Err(Error::InvalidSpec("cycles are not disjoint or exceed the degree".into()));
                }
                touched[p] = true;
                images[p] = cyc[(i + 1) % cyc.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.images[p as usize]
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    pub fn lowest_moved_point(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Act on `offset .. offset + self.degree()` inside a larger domain.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation on 1-based points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    orbit: Vec<u32>,
    // Schreier vector: generator index that reached each point.
    sv: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        Level { base, gens: Vec::new(), inv_gens: Vec::new(), orbit: Vec::new(), sv: vec![NOT_IN_ORBIT; degree] }
    }

    fn rebuild_orbit(&mut self) {
        self.sv.iter_mut().for_each(|s| *s = NOT_IN_ORBIT);
        self.orbit.clear();
        self.sv[self.base as usize] = ROOT;
        self.orbit.push(self.base);
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for (gi, g) in self.gens.iter().enumerate() {
                let q = g.apply(p);
                if self.sv[q as usize] == NOT_IN_ORBIT {
                    self.sv[q as usize] = gi as u32;
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }

    /// An element mapping the base point to `p`.
    fn transversal(&self, p: u32) -> Permutation {
        let mut word = Vec::new();
        let mut q = p;
        while self.sv[q as usize] != ROOT {
            let s = self.sv[q as usize] as usize;
            word.push(s);
            q = self.inv_gens[s].apply(q);
        }
        let mut u = Permutation::identity(self.sv.len());
        for &s in word.iter().rev() {
            u = u.compose(&self.gens[s]);
        }
        u
    }

    /// Multiply `g` on the right by inverse generators until it fixes the base point.
    fn strip(&self, g: &mut Permutation) -> bool {
        let mut p = g.apply(self.base);
        if self.sv[p as usize] == NOT_IN_ORBIT {
            return false;
        }
        while self.sv[p as usize] != ROOT {
            let s = self.sv[p as usize] as usize;
            *g = g.compose(&self.inv_gens[s]);
            p = self.inv_gens[s].apply(p);
        }
        true
    }
}

/// A permutation group with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Generators must share one degree. An empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidSpec("generators have mismatched degrees".into()));
        }
        let generators = if generators.is_empty() { vec![Permutation::identity(degree)] } else { generators };
        let levels = schreier_sims(degree, &generators);
        Ok(PermGroup { degree, generators, levels })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree.max(1), Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.clone();
        for l in &self.levels {
            if !l.strip(&mut h) {
                return false;
            }
        }
        h.is_identity()
    }

    pub fn is_abelian(&self) -> bool {
        let gs = &self.generators;
        gs.iter().enumerate().all(|(i, a)| gs[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::ElementNotInGroup);
        }
        PermGroup::new(self.degree, gens)
    }

    /// All elements, sorted lexicographically by image sequence.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let n = self.order();
        if n > cap {
            return Err(Error::ResourceExceeded { what: "element enumeration", limit: cap });
        }
        let mut out = Vec::with_capacity(n as usize);
        let transversals: Vec<Vec<Permutation>> =
            self.levels.iter().map(|l| l.orbit.iter().map(|&p| l.transversal(p)).collect()).collect();
        fn rec(level: usize, acc: Permutation, ts: &[Vec<Permutation>], out: &mut Vec<Permutation>) {
            if level == ts.len() {
                out.push(acc);
                return;
            }
            for t in &ts[level] {
                rec(level + 1, acc.compose(t), ts, out);
            }
        }
        // deepest level acts first
        let rev: Vec<Vec<Permutation>> = transversals.into_iter().rev().collect();
        rec(0, self.identity(), &rev, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    pub fn element_table(&self, cap: u64) -> Result<ElementTable> {
        Ok(ElementTable::new(self.elements(cap)?))
    }

    pub fn conjugacy_classes(&self, cap: u64) -> Result<ConjugacyClasses> {
        let table = self.element_table(cap)?;
        let gens: Vec<u32> = self.generators.iter().map(|g| table.index_of(g).expect("generator")).collect();
        Ok(ConjugacyClasses::compute(table, &gens))
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup> {
        if seeds.iter().any(|s| !self.contains(s)) {
            return Err(Error::ElementNotInGroup);
        }
        let mut gens: Vec<Permutation> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut n = PermGroup::new(self.degree, gens.clone())?;
        let mut i = 0;
        while i < gens.len() {
            for g in &self.generators {
                let c = gens[i].conjugate_by(g);
                if !n.contains(&c) {
                    gens.push(c);
                    n = PermGroup::new(self.degree, gens.clone())?;
                }
            }
            i += 1;
        }
        Ok(n)
    }

    /// Commutator subgroup, as the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut seeds = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds).expect("commutators lie in the group")
    }

    /// Orders of the derived series down to the perfect core.
    pub fn derived_series_orders(&self) -> Vec<u64> {
        let mut out = vec![self.order()];
        let mut g = self.clone();
        loop {
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return out;
            }
            out.push(d.order());
            g = d;
        }
    }

    /// Sylow p-subgroup grown one normalizing p-element at a time.
    pub fn sylow_subgroup(&self, p: u64, cap: u64) -> Result<PermGroup> {
        if !crate::util::is_prime(p) {
            return Err(Error::InvalidSpec("sylow_subgroup needs a prime".into()));
        }
        let mut target = 1u64;
        let mut n = self.order();
        while n % p == 0 {
            n /= p;
            target *= p;
        }
        let mut sub = PermGroup::trivial(self.degree);
        if target == 1 {
            return Ok(sub);
        }
        let elems = self.elements(cap)?;
        while sub.order() < target {
            let step = elems.iter().find(|g| {
                is_power_of(g.order(), p)
                    && !sub.contains(g)
                    && sub.generators.iter().all(|x| sub.contains(&x.conjugate_by(g)))
            });
            let g = step.expect("Sylow theory guarantees a normalizing p-element").clone();
            let mut gens: Vec<Permutation> =
                sub.generators.iter().filter(|x| !x.is_identity()).cloned().collect();
            gens.push(g);
            sub = PermGroup::new(self.degree, gens)?;
        }
        Ok(sub)
    }

    pub fn is_cyclic(&self, cap: u64) -> Result<bool> {
        if !self.is_abelian() {
            return Ok(false);
        }
        // an abelian group is cyclic iff its exponent equals its order
        let _ = cap;
        let exp = self.generators.iter().fold(1u64, |e, g| lcm(e, g.order()));
        Ok(exp == self.order())
    }

    /// Non-cyclic 2-group with a unique involution.
    pub fn is_generalized_quaternion(&self, cap: u64) -> Result<bool> {
        let n = self.order();
        if n < 8 || !n.is_power_of_two() || self.is_cyclic(cap)? {
            return Ok(false);
        }
        let involutions = self.elements(cap)?.iter().filter(|g| g.order() == 2).count();
        Ok(involutions == 1)
    }

    /// Direct product acting on disjoint blocks of points.
    pub fn direct_product(groups: &[&PermGroup]) -> PermGroup {
        let degree: usize = groups.iter().map(|g| g.degree).sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for g in groups {
            for x in &g.generators {
                if !x.is_identity() {
                    gens.push(x.shifted(offset, degree));
                }
            }
            offset += g.degree;
        }
        PermGroup::new(degree.max(1), gens).expect("disjoint generators")
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

fn schreier_sims(degree: usize, gens: &[Permutation]) -> Vec<Level> {
    let gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
    let mut levels: Vec<Level> = Vec::new();
    if gens.is_empty() {
        return levels;
    }
    for g in &gens {
        if levels.iter().all(|l| g.apply(l.base) == l.base) {
            let b = g.lowest_moved_point().expect("non-identity");
            levels.push(Level::new(b, degree));
        }
    }
    for g in &gens {
        for i in 0..levels.len() {
            if levels[..i].iter().all(|l| g.apply(l.base) == l.base) {
                levels[i].gens.push((*g).clone());
                levels[i].inv_gens.push(g.inverse());
            }
        }
    }
    for l in &mut levels {
        l.rebuild_orbit();
    }
    let mut i = levels.len() as isize - 1;
    while i >= 0 {
        let li = i as usize;
        let mut dropped = None;
        'scan: for oi in 0..levels[li].orbit.len() {
            let p = levels[li].orbit[oi];
            let up = levels[li].transversal(p);
            for si in 0..levels[li].gens.len() {
                let s = &levels[li].gens[si];
                let q = s.apply(p);
                // h = u_p * s * u_q^-1 fixes the base point of this level
                let mut h = up.compose(s);
                if !levels[li].strip(&mut h) {
                    unreachable!("orbit is closed under generators");
                }
                if h.is_identity() {
                    continue;
                }
                let _ = q;
                let mut j = li + 1;
                while j < levels.len() {
                    if !levels[j].strip(&mut h) {
                        break;
                    }
                    j += 1;
                }
                if j == levels.len() && h.is_identity() {
                    continue;
                }
                if j == levels.len() {
                    let b = h.lowest_moved_point().expect("non-identity residue");
                    levels.push(Level::new(b, degree));
                }
                for l in &mut levels[li + 1..=j] {
                    l.gens.push(h.clone());
                    l.inv_gens.push(h.inverse());
                    l.rebuild_orbit();
                }
                dropped = Some(j);
                break 'scan;
            }
        }
        match dropped {
            Some(j) => i = j as isize,
            None => i -= 1,
        }
    }
    levels
}

/// Sorted element list with constant-time lookup.
#[derive(Clone, Debug)]
pub struct ElementTable {
    elems: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl ElementTable {
    pub fn new(mut elems: Vec<Permutation>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        let index = elems.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        ElementTable { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: u32) -> &Permutation {
        &self.elems[i as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.index.get(g).copied()
    }

    /// Index of the identity (always 0: it is lexicographically smallest).
    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.elems[a as usize].compose(&self.elems[b as usize]);
        self.index[&p]
    }
}

/// Conjugacy classes of an enumerated group.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    table: ElementTable,
    class_of: Vec<u32>,
}

impl ConjugacyClasses {
    /// Orbits of conjugation by `gens` (element indices into `table`).
    pub fn compute(table: ElementTable, gens: &[u32]) -> Self {
        let n = table.len();
        let gens: Vec<(&Permutation, Permutation)> =
            gens.iter().map(|&g| (table.get(g), table.get(g).inverse())).collect();
        let mut raw = vec![u32::MAX; n];
        let mut members: Vec<Vec<u32>> = Vec::new();
        for e in 0..n {
            if raw[e] != u32::MAX {
                continue;
            }
            let id = members.len() as u32;
            let mut orbit = vec![e as u32];
            raw[e] = id;
            let mut i = 0;
            while i < orbit.len() {
                let x = table.get(orbit[i]);
                for (g, ginv) in &gens {
                    let c = ginv.compose(x).compose(g);
                    let ci = table.index_of(&c).expect("closed under conjugation") as usize;
                    if raw[ci] == u32::MAX {
                        raw[ci] = id;
                        orbit.push(ci as u32);
                    }
                }
                i += 1;
            }
            members.push(orbit);
        }
        // sort by (element order, class size, lexicographically least member)
        let mut keys: Vec<(u64, usize, u32, usize)> = members
            .iter()
            .enumerate()
            .map(|(k, m)| (table.get(m[0]).order(), m.len(), *m.iter().min().unwrap(), k))
            .collect();
        keys.sort_unstable();
        let mut renum = vec![0u32; members.len()];
        for (new, key) in keys.iter().enumerate() {
            renum[key.3] = new as u32;
        }
        let class_of: Vec<u32> = raw.iter().map(|&c| renum[c as usize]).collect();
        let representatives = keys.iter().map(|k| table.get(k.2).clone()).collect();
        let sizes = keys.iter().map(|k| k.1 as u64).collect();
        let element_orders = keys.iter().map(|k| k.0).collect();
        ConjugacyClasses { representatives, sizes, element_orders, table, class_of }
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.table.index_of(g).map(|i| self.class_of[i as usize] as usize)
    }

    pub fn class_of_index(&self, i: u32) -> usize {
        self.class_of[i as usize] as usize
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    /// Element indices of each class.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(i as u32);
        }
        out
    }
}

/// Order of the group element `g` composed `k` times, avoiding a full power.
pub fn order_of_power(order: u64, k: u64) -> u64 {
    order / gcd(order, k % order.max(1))
}
