//! Per-group data shared by the quotient machinery: character table, class
//! power maps, and the normal subgroup lattice as sets of classes.
//!
//! Direct products are kept as a list of concrete factors. Class `k` of a
//! product is the mixed-radix combination of factor classes, first factor
//! most significant, which matches the column order of [`product_table`].

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::chartab::{dixon_schneider, product_table, CharacterTable, ClassAlgebra};
use crate::error::{Error, Result};
use crate::perm::{ConjugacyClasses, PermGroup, Permutation};
use crate::zoo::NamedGroup;

/// Resource limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group enumerated element by element.
    pub order_cap: u64,
    /// Largest number of normal subgroups or quotient elements held at once.
    pub enumeration_cap: u64,
    /// Node budget for isomorphism backtracking.
    pub backtrack_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { order_cap: 20_000, enumeration_cap: 100_000, backtrack_budget: 10_000_000 }
    }
}

/// A set of conjugacy classes stored as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSet(Vec<u64>);

impl ClassSet {
    pub fn empty(r: usize) -> Self {
        ClassSet(vec![0; r.div_ceil(64)])
    }

    pub fn full(r: usize) -> Self {
        let mut s = Self::empty(r);
        (0..r).for_each(|k| s.insert(k));
        s
    }

    pub fn from_indices(r: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(r);
        idx.into_iter().for_each(|k| s.insert(k));
        s
    }

    #[inline]
    pub fn contains(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    pub fn intersect(&self, other: &ClassSet) -> ClassSet {
        ClassSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn union(&self, other: &ClassSet) -> ClassSet {
        ClassSet(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    pub fn is_subset(&self, other: &ClassSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &bits) in self.0.iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                let t = b.trailing_zeros() as usize;
                out.push(w * 64 + t);
                b &= b - 1;
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A normal subgroup given by its classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalSubgroup {
    pub classes: ClassSet,
    pub order: u64,
}

/// Enumerated concrete group.
#[derive(Debug)]
pub struct Concrete {
    pub group: PermGroup,
    pub classes: ConjugacyClasses,
    pub algebra: ClassAlgebra,
    /// Full multiplication table for small groups.
    pub cayley: Option<Vec<u32>>,
    pub inverse: Vec<u32>,
    /// Element indices of the group generators.
    pub generators: Vec<u32>,
}

impl Concrete {
    fn new(group: PermGroup, caps: &Caps) -> Result<Self> {
        let n = group.order();
        if n > caps.order_cap {
            return Err(Error::ResourceExceeded { what: "element enumeration", limit: caps.order_cap });
        }
        let classes = group.conjugacy_classes(caps.order_cap)?;
        let algebra = ClassAlgebra::from_classes(&classes);
        let table = classes.table();
        let inverse = table.elements().iter().map(|g| table.index_of(&g.inverse()).unwrap()).collect();
        let cayley = (n <= 1500).then(|| {
            let mut t = Vec::with_capacity((n * n) as usize);
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    t.push(table.mul(a, b));
                }
            }
            t
        });
        let generators = group.generators().iter().map(|g| table.index_of(g).unwrap()).collect();
        Ok(Concrete { group, classes, algebra, cayley, inverse, generators })
    }

    pub fn len(&self) -> usize {
        self.classes.table().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.cayley {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => self.classes.table().mul(a, b),
        }
    }

    pub fn element(&self, i: u32) -> &Permutation {
        self.classes.table().get(i)
    }
}

#[derive(Debug)]
pub enum Structure {
    Concrete(Concrete),
    /// Concrete factors of a direct product.
    Product(Vec<Arc<GroupInfo>>),
}

/// Everything the quotient and verdict layers need about one group.
#[derive(Debug)]
pub struct GroupInfo {
    pub name: String,
    pub order: u64,
    pub table: CharacterTable,
    pub structure: Structure,
    /// Normal subgroups sorted by (order, class index set).
    pub lattice: Vec<NormalSubgroup>,
    /// Class-index strides of the product factors (a single 1 when concrete).
    strides: Vec<usize>,
    radices: Vec<usize>,
}

impl GroupInfo {
    pub fn new(g: &NamedGroup, caps: &Caps) -> Result<GroupInfo> {
        match &g.factors {
            Some(fs) => {
                let mut cache: HashMap<String, Arc<GroupInfo>> = HashMap::new();
                let mut factors = Vec::new();
                for f in fs {
                    let info = match cache.get(&f.name) {
                        Some(i) => i.clone(),
                        None => {
                            let i = Arc::new(Self::build_concrete(f, caps)?);
                            cache.insert(f.name.clone(), i.clone());
                            i
                        }
                    };
                    factors.push(info);
                }
                Self::product(g.name.clone(), factors, caps)
            }
            None => Self::build_concrete(g, caps),
        }
    }

    fn build_concrete(g: &NamedGroup, caps: &Caps) -> Result<GroupInfo> {
        let c = Concrete::new(g.group.clone(), caps)?;
        let table = if c.len() == 1 { CharacterTable::trivial() } else { dixon_schneider(&c.algebra)? };
        let r = table.class_count();
        let mut info = GroupInfo {
            name: g.name.clone(),
            order: g.order(),
            table,
            structure: Structure::Concrete(c),
            lattice: Vec::new(),
            strides: vec![1],
            radices: vec![r],
        };
        info.lattice = info.lattice_from_kernels(caps)?;
        Ok(info)
    }

    /// Direct product of concrete factors.
    pub fn product(name: String, factors: Vec<Arc<GroupInfo>>, caps: &Caps) -> Result<GroupInfo> {
        let mut flat = Vec::new();
        for f in factors {
            match &f.structure {
                Structure::Concrete(_) => flat.push(f),
                Structure::Product(inner) => flat.extend(inner.iter().cloned()),
            }
        }
        let mut table = CharacterTable::trivial();
        for f in &flat {
            table = product_table(&table, &f.table);
        }
        let radices: Vec<usize> = flat.iter().map(|f| f.table.class_count()).collect();
        let mut strides = vec![1; radices.len()];
        for i in (0..radices.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radices[i + 1];
        }
        let mut info = GroupInfo {
            name,
            order: flat.iter().map(|f| f.order).product(),
            table,
            structure: Structure::Product(flat),
            lattice: Vec::new(),
            strides,
            radices,
        };
        info.lattice = info.lattice_from_kernels(caps)?;
        Ok(info)
    }

    pub fn class_count(&self) -> usize {
        self.table.class_count()
    }

    pub fn m_quaternionic(&self) -> u64 {
        self.table.m_quaternionic()
    }

    /// Concrete factors (the group itself when concrete).
    pub fn factors(&self) -> Vec<&GroupInfo> {
        match &self.structure {
            Structure::Concrete(_) => vec![self],
            Structure::Product(fs) => fs.iter().map(|f| f.as_ref()).collect(),
        }
    }

    pub fn concrete(&self) -> Option<&Concrete> {
        match &self.structure {
            Structure::Concrete(c) => Some(c),
            Structure::Product(_) => None,
        }
    }

    pub fn digits(&self, k: usize) -> Vec<usize> {
        self.strides.iter().zip(&self.radices).map(|(&s, &r)| (k / s) % r).collect()
    }

    pub fn from_digits(&self, d: &[usize]) -> usize {
        d.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    /// Class of `g_k^t`.
    pub fn power_class(&self, k: usize, t: i64) -> usize {
        match &self.structure {
            Structure::Concrete(c) => c.algebra.power_class(k, t),
            Structure::Product(fs) => {
                let d: Vec<usize> = self.digits(k).iter().zip(fs).map(|(&x, f)| f.power_class(x, t)).collect();
                self.from_digits(&d)
            }
        }
    }

    pub fn subgroup(&self, classes: ClassSet) -> NormalSubgroup {
        let order = classes.indices().iter().map(|&k| self.table.sizes[k]).sum();
        NormalSubgroup { classes, order }
    }

    pub fn trivial_subgroup(&self) -> NormalSubgroup {
        self.subgroup(ClassSet::from_indices(self.class_count(), [0]))
    }

    pub fn whole(&self) -> NormalSubgroup {
        self.subgroup(ClassSet::full(self.class_count()))
    }

    /// Every normal subgroup is an intersection of irreducible kernels.
    fn lattice_from_kernels(&self, caps: &Caps) -> Result<Vec<NormalSubgroup>> {
        let r = self.class_count();
        let mut kernels: Vec<ClassSet> =
            (0..r).map(|i| ClassSet::from_indices(r, self.table.kernel(i))).collect();
        kernels.sort();
        kernels.dedup();
        let mut seen: hashbrown::HashSet<ClassSet> = kernels.iter().cloned().collect();
        seen.insert(ClassSet::full(r));
        let mut frontier: Vec<ClassSet> = seen.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for k in &kernels {
                    let c = a.intersect(k);
                    if !seen.contains(&c) {
                        if seen.len() as u64 >= caps.enumeration_cap {
                            return Err(Error::ResourceExceeded { what: "normal subgroup lattice", limit: caps.enumeration_cap });
                        }
                        seen.insert(c.clone());
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }
        Ok(self.sorted(seen.into_iter()))
    }

    fn sorted(&self, sets: impl Iterator<Item = ClassSet>) -> Vec<NormalSubgroup> {
        let mut out: Vec<(u64, Vec<usize>, NormalSubgroup)> = sets
            .map(|c| {
                let n = self.subgroup(c);
                (n.order, n.classes.indices(), n)
            })
            .collect();
        out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        out.into_iter().map(|x| x.2).collect()
    }

    /// Lattice of a concrete group by joins of normal closures of single
    /// classes, using class multiplication supports.
    pub fn lattice_by_closure(&self) -> Option<Vec<NormalSubgroup>> {
        let c = self.concrete()?;
        let r = self.class_count();
        let close = |seed: &ClassSet| -> ClassSet {
            let mut s = seed.clone();
            s.insert(0);
            loop {
                let idx = s.indices();
                let mut grown = s.clone();
                for &i in &idx {
                    for &j in &idx {
                        for k in c.algebra.product_support(i, j) {
                            grown.insert(k);
                        }
                    }
                }
                if grown == s {
                    return s;
                }
                s = grown;
            }
        };
        let principal: Vec<ClassSet> = (0..r).map(|k| close(&ClassSet::from_indices(r, [k]))).collect();
        let mut seen: hashbrown::HashSet<ClassSet> = principal.iter().cloned().collect();
        let mut frontier: Vec<ClassSet> = seen.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for p in &principal {
                    if p.is_subset(a) {
                        continue;
                    }
                    let j = close(&a.union(p));
                    if seen.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        Some(self.sorted(seen.into_iter()))
    }

    /// Irreducibles of `G/M`, as row indices of this table.
    pub fn quotient_characters(&self, m: &ClassSet) -> Vec<usize> {
        let r = self.class_count();
        (0..r)
            .filter(|&i| {
                let d = crate::cyclo::Cyclotomic::integer(self.table.degrees[i] as i64);
                m.indices().iter().all(|&k| self.table.characters[i][k] == d)
            })
            .collect()
    }

    pub fn quotient_m_quaternionic(&self, m: &ClassSet) -> u64 {
        self.quotient_characters(m)
            .into_iter()
            .filter(|&i| self.table.degrees[i] == 2 && self.table.indicators[i] == -1)
            .count() as u64
    }

    /// Isomorphism invariants of `G/M` read off this group's data.
    pub fn quotient_fingerprint(&self, m: &NormalSubgroup) -> Fingerprint {
        let chars = self.quotient_characters(&m.classes);
        let mut degrees: Vec<(u64, i8)> = chars.iter().map(|&i| (self.table.degrees[i], self.table.indicators[i])).collect();
        degrees.sort();
        let mut hist: Vec<(u64, u64)> = Vec::new();
        for k in 0..self.class_count() {
            let o = self.table.element_orders[k];
            let om = crate::util::divisors(o)
                .into_iter()
                .find(|&t| m.classes.contains(self.power_class(k, t as i64)))
                .unwrap_or(o);
            match hist.iter_mut().find(|(x, _)| *x == om) {
                Some(e) => e.1 += self.table.sizes[k],
                None => hist.push((om, self.table.sizes[k])),
            }
        }
        hist.iter_mut().for_each(|e| e.1 /= m.order);
        hist.sort();
        Fingerprint { order: self.order / m.order, degrees, order_histogram: hist }
    }

    /// Normal subgroups containing `m`.
    pub fn above<'a>(&'a self, m: &'a NormalSubgroup) -> impl Iterator<Item = &'a NormalSubgroup> + 'a {
        self.lattice.iter().filter(move |n| m.classes.is_subset(&n.classes))
    }

    /// Class index of a tuple of factor element indices.
    pub fn class_of_elements(&self, elems: &[u32]) -> usize {
        let d: Vec<usize> = self
            .factors()
            .iter()
            .zip(elems)
            .map(|(f, &e)| f.concrete().unwrap().classes.class_of_index(e))
            .collect();
        self.from_digits(&d)
    }
}

/// Invariants compared before any isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: u64,
    /// (degree, indicator) of every irreducible, sorted.
    pub degrees: Vec<(u64, i8)>,
    /// (element order, count), sorted.
    pub order_histogram: Vec<(u64, u64)>,
}

impl Fingerprint {
    pub fn m_quaternionic(&self) -> u64 {
        self.degrees.iter().filter(|&&(d, nu)| d == 2 && nu == -1).count() as u64
    }

    /// Order of the abelianization.
    pub fn abelianization_order(&self) -> u64 {
        self.degrees.iter().filter(|&&(d, _)| d == 1).count() as u64
    }

    pub fn real_linear(&self) -> u64 {
        self.degrees.iter().filter(|&&(d, nu)| d == 1 && nu == 1).count() as u64
    }
}

#[cfg(test)]
mod info_tests {
    use super::*;
    use crate::zoo::build_str;

    fn info(s: &str) -> GroupInfo {
        GroupInfo::new(&build_str(s).unwrap(), &Caps::default()).unwrap()
    }

    #[test]
    fn lattice_sizes() {
        let q8 = info("Q(8)");
        let orders: Vec<u64> = q8.lattice.iter().map(|n| n.order).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
        // 1, Z, C4, C8, two Q8 and Q16
        assert_eq!(info("Q(16)").lattice.len(), 7);
        assert_eq!(info("C(7)").lattice.len(), 2);
    }

    #[test]
    fn both_lattice_routes_agree() {
        for s in ["Q(8)", "BT", "BO", "SG(32,14)", "SG(36,7)", "Q(24)"] {
            let g = info(s);
            assert_eq!(g.lattice_by_closure().unwrap(), g.lattice, "{}", s);
        }
    }

    #[test]
    fn product_classes_are_mixed_radix() {
        let g = info("BT x C(2)");
        assert_eq!(g.class_count(), 14);
        assert_eq!(g.m_quaternionic(), 2);
        let k = g.from_digits(&[3, 1]);
        assert_eq!(g.digits(k), vec![3, 1]);
        assert_eq!(g.table.element_orders[k], crate::util::lcm(g.factors()[0].table.element_orders[3], 2));
    }

    #[test]
    fn quotient_fingerprint_of_q8_mod_center() {
        let q8 = info("Q(8)");
        let z = &q8.lattice[1];
        let fp = q8.quotient_fingerprint(z);
        assert_eq!(fp.order, 4);
        assert_eq!(fp.order_histogram, vec![(1, 1), (2, 3)]);
        assert_eq!(fp.m_quaternionic(), 0);
    }
}
