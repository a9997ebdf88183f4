//! Finite presentations and Todd-Coxeter coset enumeration.
//!
//! Text grammar: `x,y | x^4, x^2*Y^2, Y*x*y*x`. Generators are single
//! lowercase letters and an uppercase letter denotes the inverse. Words may
//! use `*` or juxtaposition, `^n` with negative `n`, parentheses, commutators
//! `[a,b] = a^-1 b^-1 a b`, `1` for the empty word, and `u = v` relations.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermGroup};

/// A word is a sequence of signed 1-based generator indices.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<char>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<char>, relators: Vec<Word>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidSpec("presentation needs a generator".into()));
        }
        let n = names.len() as i32;
        if relators.iter().flatten().any(|&l| l == 0 || l.abs() > n) {
            return Err(Error::InvalidSpec("relator uses an unknown generator".into()));
        }
        Ok(Presentation { names, relators: relators.into_iter().map(|r| free_reduce(&r)).collect() })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).presentation()
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Parse a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut p = Parser::new(text);
        p.names = self.names.clone();
        let w = p.word()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("trailing input after word"));
        }
        Ok(free_reduce(&w))
    }

    pub fn with_relators_reversed(&self) -> Presentation {
        let mut rels = self.relators.clone();
        rels.reverse();
        Presentation { names: self.names.clone(), relators: rels }
    }

    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for (i, &l) in w.iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            let c = self.names[(l.unsigned_abs() - 1) as usize];
            s.push(if l < 0 { c.to_ascii_uppercase() } else { c });
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.names.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(" | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.format_word(r))?;
        }
        Ok(())
    }
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Evaluate a word at permutation images of the generators.
pub fn evaluate(w: &[i32], gens: &[Permutation]) -> Permutation {
    let degree = gens.first().map(|g| g.degree()).unwrap_or(1);
    let invs: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();
    let mut acc = Permutation::identity(degree);
    for &l in w {
        let i = (l.unsigned_abs() - 1) as usize;
        acc = acc.compose(if l > 0 { &gens[i] } else { &invs[i] });
    }
    acc
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    names: Vec<char>,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, names: Vec::new() }
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected '{}'", c)))
        }
    }

    fn presentation(&mut self) -> Result<Presentation> {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_lowercase() => {
                    if self.names.contains(&c) {
                        return Err(self.err("duplicate generator"));
                    }
                    self.names.push(c);
                    self.pos += 1;
                }
                _ => return Err(self.err("expected a lowercase generator name")),
            }
            match self.peek() {
                Some(',') => self.pos += 1,
                Some('|') => {
                    self.pos += 1;
                    break;
                }
                None => break,
                _ => return Err(self.err("expected ',' or '|'")),
            }
        }
        let mut relators = Vec::new();
        if self.peek().is_some() {
            loop {
                let mut sides = vec![self.word()?];
                while self.peek() == Some('=') {
                    self.pos += 1;
                    sides.push(self.word()?);
                }
                if sides.len() == 1 {
                    relators.push(sides.pop().unwrap());
                } else {
                    for pair in sides.windows(2) {
                        let mut r = pair[0].clone();
                        r.extend(invert_word(&pair[1]));
                        relators.push(r);
                    }
                }
                match self.peek() {
                    Some(',') => self.pos += 1,
                    None => break,
                    _ => return Err(self.err("expected ',' between relators")),
                }
            }
        }
        Presentation::new(core::mem::take(&mut self.names), relators)
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Vec::new();
        let mut first = true;
        loop {
            match self.peek() {
                Some('*') if !first => {
                    self.pos += 1;
                    w.extend(self.factor()?);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[' || c == '1' => {
                    w.extend(self.factor()?);
                }
                _ => {
                    if first {
                        return Err(self.err("expected a word"));
                    }
                    return Ok(w);
                }
            }
            first = false;
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                w
            }
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                let mut w = invert_word(&a);
                w.extend(invert_word(&b));
                w.extend(a);
                w.extend(b);
                w
            }
            Some('1') => {
                self.pos += 1;
                Vec::new()
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let lower = c.to_ascii_lowercase();
                let idx = self
                    .names
                    .iter()
                    .position(|&n| n == lower)
                    .ok_or_else(|| self.err("unknown generator"))? as i32
                    + 1;
                self.pos += 1;
                vec![if c.is_ascii_uppercase() { -idx } else { idx }]
            }
            _ => return Err(self.err("expected a generator")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let base = if e < 0 { invert_word(&atom) } else { atom };
            let mut w = Vec::new();
            for _ in 0..e.unsigned_abs() {
                w.extend_from_slice(&base);
            }
            return Ok(w);
        }
        Ok(atom)
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        let mut v: i64 = 0;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            v = v.checked_mul(10).and_then(|v| v.checked_add(d as i64)).ok_or_else(|| self.err("exponent too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer exponent"));
        }
        Ok(if neg { -v } else { v })
    }
}

const UNDEF: u32 = u32::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(ngens: usize, max: usize) -> Self {
        let cols = 2 * ngens;
        CosetTable { cols, table: vec![UNDEF; cols], parent: vec![0], live: 1, max, queue: Vec::new() }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32> {
        if self.parent.len() >= self.max {
            return Err(Error::EnumerationOverflow { limit: self.max });
        }
        let n = self.parent.len() as u32;
        self.parent.push(n);
        self.table.extend(core::iter::repeat_n(UNDEF, self.cols));
        self.live += 1;
        self.set(c, x, n);
        self.set(n, x ^ 1, c);
        Ok(n)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                if self.get(d, x ^ 1) == g {
                    self.set(d, x ^ 1, UNDEF);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.get(mu, x) != UNDEF {
                    let t = self.get(mu, x);
                    self.merge(nu, t);
                } else if self.get(nu, x ^ 1) != UNDEF {
                    let t = self.get(nu, x ^ 1);
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != UNDEF {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }
}

fn columns(w: &[i32]) -> Vec<usize> {
    w.iter().map(|&l| 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)).collect()
}

/// Permutation action on the right cosets of the subgroup generated by `subgroup`.
pub fn coset_action(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<PermGroup> {
    if max_cosets == 0 {
        return Err(Error::EnumerationOverflow { limit: 0 });
    }
    let mut t = CosetTable::new(p.generator_count(), max_cosets);
    let rels: Vec<Vec<usize>> = p.relators().iter().map(|r| columns(r)).collect();
    for w in subgroup {
        t.scan_and_fill(0, &columns(w))?;
    }
    let mut alpha = 0u32;
    while (alpha as usize) < t.parent.len() {
        if t.is_live(alpha) {
            for r in &rels {
                t.scan_and_fill(alpha, r)?;
                if !t.is_live(alpha) {
                    break;
                }
            }
            if t.is_live(alpha) {
                for x in 0..t.cols {
                    if t.get(alpha, x) == UNDEF {
                        t.define(alpha, x)?;
                    }
                }
            }
        }
        alpha += 1;
    }
    // standardize: breadth-first numbering from the subgroup coset
    let mut order = vec![0u32];
    let mut newnum = vec![UNDEF; t.parent.len()];
    newnum[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for x in 0..t.cols {
            let d = t.get(c, x);
            let d = t.rep(d);
            if newnum[d as usize] == UNDEF {
                newnum[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
        i += 1;
    }
    debug_assert_eq!(order.len(), t.live);
    let degree = order.len();
    let mut gens = Vec::with_capacity(p.generator_count());
    for g in 0..p.generator_count() {
        let mut images = vec![0u32; degree];
        for (k, &c) in order.iter().enumerate() {
            let d = t.get(c, 2 * g);
            images[k] = newnum[t.rep(d) as usize];
        }
        gens.push(Permutation::from_images(images).expect("complete coset table"));
    }
    PermGroup::new(degree, gens)
}

/// Regular permutation representation (cosets of the trivial subgroup).
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Result<PermGroup> {
    coset_action(p, &[], max_cosets)
}
