//! Named groups: specifications, a small expression language, and builders.
//!
//! Expressions:
//!
//! ```text
//! C(n)  Q(4n)  BT  BO  BI  A x B  (A)
//! SG(order,id)                        shipped presentation entry
//! SG(order,id): a,b | rels            inline presentation
//! <a,b | rels>                        presentation, regular representation
//! perm[deg]: (1,2,3)(4,5);(1,4)       1-based cycles, one generator per ';'
//! SD(base, acting; w1, w2; w1, w2)    semidirect product; group i of words
//!                                     gives the images of the base generators
//!                                     under acting generator i
//! ```

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::present::{coset_action, coset_enumerate, Presentation};

/// Shipped presentations for groups named by small-group identifiers.
pub const PRESENTATIONS: &str = include_str!("../data/presentations.dat");

/// Coset enumeration limit used by the builders.
pub const MAX_COSETS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Parameter is the order `4n`.
    Quaternion(u64),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    Product(Vec<GroupSpec>),
    Semidirect { base: Box<GroupSpec>, acting: Box<GroupSpec>, images: Vec<Vec<String>> },
    Presentation(String),
    Perm { degree: usize, generators: Vec<String> },
    CatalogRef { order: u64, id: u64, presentation: Option<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Builtin,
    PresentationFile,
    External,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Builtin => "builtin",
            Provenance::PresentationFile => "presentation_file",
            Provenance::External => "external",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub spec: GroupSpec,
    pub group: PermGroup,
    /// Direct factors (flattened, never themselves products) when built as a product.
    pub factors: Option<Vec<Arc<NamedGroup>>>,
    pub provenance: Provenance,
}

impl NamedGroup {
    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        // bare `gens | relators`
        let t = text.trim();
        if t.contains('|') && !t.starts_with('<') && !t.contains('<') {
            return Ok(GroupSpec::Presentation(t.to_string()));
        }
        let mut p = SpecParser { s: text.chars().collect(), i: 0 };
        let spec = p.expr()?;
        p.skip_ws();
        if p.i < p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(spec)
    }

    /// Order when it can be read off without building.
    pub fn declared_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Quaternion(n) => Some(*n),
            GroupSpec::BinaryTetrahedral => Some(24),
            GroupSpec::BinaryOctahedral => Some(48),
            GroupSpec::BinaryIcosahedral => Some(120),
            GroupSpec::Product(fs) => fs.iter().map(|f| f.declared_order()).product(),
            GroupSpec::Semidirect { base, acting, .. } => Some(base.declared_order()? * acting.declared_order()?),
            GroupSpec::CatalogRef { order, .. } => Some(*order),
            _ => None,
        }
    }

    pub fn product(factors: Vec<GroupSpec>) -> GroupSpec {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                GroupSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            GroupSpec::Product(flat)
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C({})", n),
            GroupSpec::Quaternion(n) => write!(f, "Q({})", n),
            GroupSpec::BinaryTetrahedral => f.write_str("BT"),
            GroupSpec::BinaryOctahedral => f.write_str("BO"),
            GroupSpec::BinaryIcosahedral => f.write_str("BI"),
            GroupSpec::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    match x {
                        GroupSpec::Perm { .. } | GroupSpec::CatalogRef { presentation: Some(_), .. } => write!(f, "({})", x)?,
                        _ => write!(f, "{}", x)?,
                    }
                }
                Ok(())
            }
            GroupSpec::Semidirect { base, acting, images } => {
                write!(f, "SD({}, {}", base, acting)?;
                for imgs in images {
                    write!(f, "; {}", imgs.join(", "))?;
                }
                f.write_str(")")
            }
            GroupSpec::Presentation(p) => write!(f, "<{}>", p),
            GroupSpec::Perm { degree, generators } => write!(f, "perm[{}]: {}", degree, generators.join(";")),
            GroupSpec::CatalogRef { order, id, presentation } => {
                write!(f, "SG({},{})", order, id)?;
                if let Some(p) = presentation {
                    write!(f, ": {}", p)?;
                }
                Ok(())
            }
        }
    }
}

struct SpecParser {
    s: Vec<char>,
    i: usize,
}

impl SpecParser {
    fn err(&self, msg: &str) -> Error {
        Error::parse(1, self.i + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected '{}'", c)))
        }
    }

    fn starts_with(&self, kw: &str) -> bool {
        let k: Vec<char> = kw.chars().collect();
        self.s.len() >= self.i + k.len() && self.s[self.i..self.i + k.len()] == k[..]
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        let t: String = self.s[start..self.i].iter().collect();
        t.parse().map_err(|_| Error::parse(1, start + 1, "number out of range"))
    }

    fn expr(&mut self) -> Result<GroupSpec> {
        let mut factors = vec![self.term()?];
        loop {
            self.skip_ws();
            let save = self.i;
            match self.peek() {
                Some('x') | Some('×') => {
                    self.i += 1;
                    let next = self.peek();
                    if next.is_some_and(|c| c.is_whitespace() || c == '(') {
                        factors.push(self.term()?);
                        continue;
                    }
                    self.i = save;
                    break;
                }
                _ => break,
            }
        }
        Ok(GroupSpec::product(factors))
    }

    /// Text up to end of input or an unbalanced ')'.
    fn rest(&mut self) -> String {
        let start = self.i;
        let mut depth = 0i32;
        while let Some(c) = self.peek() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' if depth == 0 => break,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            self.i += 1;
        }
        self.s[start..self.i].iter().collect::<String>().trim().to_string()
    }

    /// Text up to a top-level ',', ';' or ')'.
    fn item(&mut self) -> String {
        let start = self.i;
        let mut depth = 0i32;
        while let Some(c) = self.peek() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' if depth == 0 => break,
                ')' | ']' => depth -= 1,
                ',' | ';' if depth == 0 => break,
                _ => {}
            }
            self.i += 1;
        }
        self.s[start..self.i].iter().collect::<String>().trim().to_string()
    }

    fn term(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        let at = self.i;
        if self.starts_with("BT") {
            self.i += 2;
            return Ok(GroupSpec::BinaryTetrahedral);
        }
        if self.starts_with("BO") {
            self.i += 2;
            return Ok(GroupSpec::BinaryOctahedral);
        }
        if self.starts_with("BI") {
            self.i += 2;
            return Ok(GroupSpec::BinaryIcosahedral);
        }
        if self.starts_with("SG(") {
            self.i += 3;
            let order = self.number()?;
            self.eat(',')?;
            let id = self.number()?;
            self.eat(')')?;
            self.skip_ws();
            let presentation = if self.peek() == Some(':') {
                self.i += 1;
                self.skip_ws();
                Some(self.rest())
            } else {
                None
            };
            return Ok(GroupSpec::CatalogRef { order, id, presentation });
        }
        if self.starts_with("SD(") {
            self.i += 3;
            let base = self.expr()?;
            self.eat(',')?;
            let acting = self.expr()?;
            let mut images = Vec::new();
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(';') => {
                        self.i += 1;
                        let mut group = Vec::new();
                        loop {
                            group.push(self.item());
                            if self.peek() == Some(',') {
                                self.i += 1;
                            } else {
                                break;
                            }
                        }
                        images.push(group);
                    }
                    Some(')') => {
                        self.i += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ';' or ')' in SD(...)")),
                }
            }
            return Ok(GroupSpec::Semidirect { base: Box::new(base), acting: Box::new(acting), images });
        }
        if self.starts_with("perm[") {
            self.i += 5;
            let degree = self.number()? as usize;
            self.eat(']')?;
            self.eat(':')?;
            self.skip_ws();
            let body = self.rest();
            let generators = body.split(';').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect();
            return Ok(GroupSpec::Perm { degree, generators });
        }
        match self.peek() {
            Some('C') | Some('Q') => {
                let kind = self.peek().unwrap();
                self.i += 1;
                self.eat('(')?;
                let n = self.number()?;
                self.eat(')')?;
                if kind == 'C' {
                    if n == 0 {
                        return Err(Error::parse(1, at + 1, "C(n) needs n >= 1"));
                    }
                    Ok(GroupSpec::Cyclic(n))
                } else {
                    if n < 8 || n % 4 != 0 {
                        return Err(Error::parse(1, at + 1, "Q(m) needs m = 4n with n >= 2"));
                    }
                    Ok(GroupSpec::Quaternion(n))
                }
            }
            Some('<') => {
                self.i += 1;
                let start = self.i;
                while self.peek().is_some_and(|c| c != '>') {
                    self.i += 1;
                }
                let body: String = self.s[start..self.i].iter().collect();
                self.eat('>')?;
                Ok(GroupSpec::Presentation(body.trim().to_string()))
            }
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                self.eat(')')?;
                Ok(e)
            }
            _ => Err(self.err("expected a group expression")),
        }
    }
}

/// Shipped `SG(order,id)` entries.
pub fn presentation_entries() -> Result<Vec<((u64, u64), GroupSpec)>> {
    let mut out = Vec::new();
    for (ln, line) in PRESENTATIONS.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = body.split_once('=') else {
            return Err(Error::parse(ln + 1, 1, "expected 'SG(order,id) = expression'"));
        };
        let key = match GroupSpec::parse(lhs.trim()) {
            Ok(GroupSpec::CatalogRef { order, id, presentation: None }) => (order, id),
            _ => return Err(Error::parse(ln + 1, 1, "left side must be SG(order,id)")),
        };
        let spec = GroupSpec::parse(rhs.trim()).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::parse(ln + 1, column + lhs.len() + 1, message),
            other => other,
        })?;
        out.push((key, spec));
    }
    Ok(out)
}

fn lookup(order: u64, id: u64) -> Result<GroupSpec> {
    presentation_entries()?
        .into_iter()
        .find(|(k, _)| *k == (order, id))
        .map(|(_, s)| s)
        .ok_or_else(|| Error::UnknownGroup(alloc::format!("SG({},{})", order, id)))
}

/// Build a named group from its specification.
pub fn build(spec: &GroupSpec) -> Result<NamedGroup> {
    let name = spec.to_string();
    let mut provenance = Provenance::Builtin;
    let mut factors = None;
    let group = match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Quaternion(m) => {
            if *m < 8 || m % 4 != 0 {
                return Err(Error::InvalidSpec(alloc::format!("Q({}) needs order 4n with n >= 2", m)));
            }
            quaternion(m / 4)?
        }
        GroupSpec::BinaryTetrahedral => special_linear_2(3),
        GroupSpec::BinaryOctahedral => binary_octahedral()?,
        GroupSpec::BinaryIcosahedral => special_linear_2(5),
        GroupSpec::Product(fs) => {
            if fs.is_empty() {
                return Err(Error::InvalidSpec("empty product".into()));
            }
            let built: Vec<NamedGroup> = fs.iter().map(build).collect::<Result<_>>()?;
            let mut flat = Vec::new();
            for b in built {
                match b.factors {
                    Some(inner) => flat.extend(inner),
                    None => flat.push(Arc::new(b)),
                }
            }
            let gs: Vec<&PermGroup> = flat.iter().map(|f| &f.group).collect();
            let g = PermGroup::direct_product(&gs);
            factors = Some(flat);
            g
        }
        GroupSpec::Semidirect { base, acting, images } => semidirect(&build(base)?.group, &build(acting)?.group, images)?,
        GroupSpec::Presentation(text) => {
            provenance = Provenance::External;
            coset_enumerate(&Presentation::parse(text)?, MAX_COSETS)?
        }
        GroupSpec::Perm { degree, generators } => {
            provenance = Provenance::External;
            let gens = generators.iter().map(|g| parse_cycles(*degree, g)).collect::<Result<Vec<_>>>()?;
            PermGroup::new((*degree).max(1), gens)?
        }
        GroupSpec::CatalogRef { order, id, presentation } => {
            let g = match presentation {
                Some(text) => {
                    provenance = Provenance::External;
                    coset_enumerate(&Presentation::parse(text)?, MAX_COSETS)?
                }
                None => {
                    provenance = Provenance::PresentationFile;
                    build(&lookup(*order, *id)?)?.group
                }
            };
            if g.order() != *order {
                return Err(Error::Validation {
                    name: name.clone(),
                    expected: alloc::format!("order {}", order),
                    computed: alloc::format!("order {}", g.order()),
                });
            }
            g
        }
    };
    Ok(NamedGroup { name, spec: spec.clone(), group, factors, provenance })
}

pub fn build_str(text: &str) -> Result<NamedGroup> {
    build(&GroupSpec::parse(text)?)
}

fn cyclic(n: u64) -> PermGroup {
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let images = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    PermGroup::new(n as usize, vec![Permutation::from_images(images).unwrap()]).unwrap()
}

fn quaternion(n: u64) -> Result<PermGroup> {
    let p = Presentation::parse(&alloc::format!("x,y | x^{}, x^{}*Y^2, Y*x*y*x", 2 * n, n))?;
    coset_enumerate(&p, MAX_COSETS)
}

/// `SL_2(F_p)` acting on the nonzero vectors of `F_p^2`.
fn special_linear_2(p: u32) -> PermGroup {
    let idx = |x: u32, y: u32| x * p + y - 1;
    let act = |m: [u32; 4]| {
        let mut images = vec![0u32; (p * p - 1) as usize];
        for x in 0..p {
            for y in 0..p {
                if x == 0 && y == 0 {
                    continue;
                }
                let nx = (m[0] * x + m[1] * y) % p;
                let ny = (m[2] * x + m[3] * y) % p;
                images[idx(x, y) as usize] = idx(nx, ny);
            }
        }
        Permutation::from_images(images).unwrap()
    };
    let gens = vec![act([1, 1, 0, 1]), act([0, p - 1, 1, 0])];
    PermGroup::new((p * p - 1) as usize, gens).unwrap()
}

fn binary_octahedral() -> Result<PermGroup> {
    let p = Presentation::parse("s,t | s^3 = t^4 = (s*t)^2")?;
    // cosets of the order-3 subgroup <s^2>, whose core is trivial
    let g = coset_action(&p, &[vec![1, 1]], MAX_COSETS)?;
    debug_assert_eq!(g.order(), 48);
    Ok(g)
}

/// Parse 1-based cycles such as `(1,2,3)(4,5)`.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let t = text.trim();
    if t == "()" {
        return Ok(Permutation::identity(degree.max(1)));
    }
    for part in t.split(')') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let inner = part
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidSpec(alloc::format!("malformed cycle '{}'", part)))?;
        let pts = inner
            .split(',')
            .map(|x| match x.trim().parse::<u32>() {
                Ok(v) if v >= 1 && (v as usize) <= degree => Ok(v - 1),
                _ => Err(Error::InvalidSpec(alloc::format!("bad point '{}' for degree {}", x.trim(), degree))),
            })
            .collect::<Result<Vec<u32>>>()?;
        cycles.push(pts);
    }
    Permutation::from_cycles(degree.max(1), &cycles)
}

/// Semidirect product `N : H` acting on `N ⊔ points(H)`; `images[i]` lists the
/// images of the generators of `N` (words in letters `a, b, ...`) under the
/// automorphism attached to generator `i` of `H`.
pub fn semidirect(base: &PermGroup, acting: &PermGroup, images: &[Vec<String>]) -> Result<PermGroup> {
    let ngens = base.generators();
    let hgens = acting.generators();
    if images.len() != hgens.len() {
        return Err(Error::InvalidSpec(alloc::format!(
            "acting group has {} generators but {} image lists were given",
            hgens.len(),
            images.len()
        )));
    }
    let names: Vec<char> = (0..ngens.len()).map(|i| (b'a' + i as u8) as char).collect();
    let pres = Presentation::new(names, Vec::new())?;
    let elems = base.elements(MAX_COSETS as u64)?;
    let index: HashMap<&Permutation, u32> = elems.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();
    let n = elems.len();
    let right_mult = |g: &Permutation| {
        Permutation::from_images(elems.iter().map(|x| index[&x.compose(g)]).collect()).unwrap()
    };
    let hdeg = acting.degree();
    let degree = n + hdeg;
    let mut gens = Vec::new();
    for g in ngens {
        gens.push(right_mult(g).shifted(0, degree));
    }
    for (h, imgs) in hgens.iter().zip(images) {
        if imgs.len() != ngens.len() {
            return Err(Error::InvalidSpec("each automorphism needs one image per base generator".into()));
        }
        let targets = imgs
            .iter()
            .map(|w| pres.parse_word(w).map(|w| crate::present::evaluate(&w, ngens)))
            .collect::<Result<Vec<_>>>()?;
        let phi = extend_to_automorphism(&elems, &index, ngens, &targets)?;
        let mut imgs_all: Vec<u32> = phi;
        imgs_all.extend(h.images().iter().map(|&p| p + n as u32));
        gens.push(Permutation::from_images(imgs_all)?);
    }
    let g = PermGroup::new(degree, gens)?;
    if g.order() != n as u64 * acting.order() {
        return Err(Error::InvalidSpec("the given automorphisms do not define an action of the acting group".into()));
    }
    Ok(g)
}

/// Extend generator images to a map on all elements, checking it is an automorphism.
fn extend_to_automorphism(
    elems: &[Permutation],
    index: &HashMap<&Permutation, u32>,
    gens: &[Permutation],
    targets: &[Permutation],
) -> Result<Vec<u32>> {
    let n = elems.len();
    let bad = || Error::InvalidSpec("images do not define an automorphism of the base".into());
    let mut phi = vec![u32::MAX; n];
    let id = index[&elems[0].compose(&elems[0].inverse())];
    phi[id as usize] = id;
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (g, t) in gens.iter().zip(targets) {
            let y = index[&elems[x as usize].compose(g)];
            let fy = index.get(&elems[phi[x as usize] as usize].compose(t)).copied().ok_or_else(bad)?;
            if phi[y as usize] == u32::MAX {
                phi[y as usize] = fy;
                queue.push(y);
            } else if phi[y as usize] != fy {
                return Err(bad());
            }
        }
        i += 1;
    }
    let mut seen = vec![false; n];
    for &v in &phi {
        if v == u32::MAX || seen[v as usize] {
            return Err(bad());
        }
        seen[v as usize] = true;
    }
    Ok(phi)
}
