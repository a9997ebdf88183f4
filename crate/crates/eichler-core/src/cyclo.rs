//! Exact elements of cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored in the power basis of `Q(zeta_n)` modulo the
//! cyclotomic polynomial, always at its minimal conductor, so structural
//! equality is field equality. Hot loops should go through a [`CycloField`],
//! which caches reduction rows and normalizations for one conductor.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use hashbrown::HashMap;

use crate::util::{divisors, euler_phi, gcd, lcm};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn integer(v: i64) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![v] }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// `zeta_n^k` at its minimal conductor.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let f = CycloField::new(n);
        let e = k.rem_euclid(n as i64) as u32;
        f.normalize(&f.from_exponents(&[(e, 1)]))
    }

    /// Conductor and power-basis coefficients (length `phi(conductor)`).
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    /// Rebuild from raw parts, normalizing to the minimal conductor.
    pub fn from_parts(conductor: u32, coeffs: &[i64]) -> Self {
        let f = CycloField::new(conductor);
        let mut v = vec![0i64; f.phi];
        for (i, &c) in coeffs.iter().enumerate() {
            for (j, r) in f.rows[i].iter().enumerate() {
                v[j] += c * r;
            }
        }
        f.normalize(&v)
    }

    pub fn as_integer(&self) -> Option<i64> {
        (self.conductor == 1).then(|| self.coeffs[0])
    }

    pub fn is_zero(&self) -> bool {
        self.as_integer() == Some(0)
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image under `zeta -> zeta^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let f = CycloField::new(self.conductor);
        let v = f.galois(&self.coeffs, k);
        f.normalize(&v)
    }

    /// Trace down to the rationals, `sum over sigma of sigma(x)`.
    pub fn trace(&self) -> i64 {
        let n = self.conductor as i64;
        let f = CycloField::new(self.conductor);
        let mut acc = vec![0i64; f.phi];
        for k in 1..=n {
            if gcd(k as u64, n as u64) == 1 {
                let g = f.galois(&self.coeffs, k);
                acc.iter_mut().zip(g).for_each(|(a, b)| *a += b);
            }
        }
        f.normalize(&acc).as_integer().expect("trace is rational")
    }

    /// Real and imaginary parts evaluated with `zeta_n = exp(2 pi i / n)`,
    /// given cosine and sine functions (kept abstract for `no_std`).
    pub fn evaluate(&self, cos: impl Fn(f64) -> f64, sin: impl Fn(f64) -> f64) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let t = 2.0 * core::f64::consts::PI * k as f64 / n;
            re += c as f64 * cos(t);
            im += c as f64 * sin(t);
        }
        (re, im)
    }
}

fn binary(a: &Cyclotomic, b: &Cyclotomic, op: impl Fn(&CycloField, &[i64], &[i64]) -> Vec<i64>) -> Cyclotomic {
    let n = lcm(a.conductor as u64, b.conductor as u64) as u32;
    let f = CycloField::new(n);
    let (x, y) = (f.embed(a), f.embed(b));
    let v = op(&f, &x, &y);
    f.normalize(&v)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        binary(self, rhs, |_, x, y| x.iter().zip(y).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        binary(self, rhs, |_, x, y| x.iter().zip(y).map(|(a, b)| a - b).collect())
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        binary(self, rhs, |f, x, y| f.mul(x, y))
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// GAP-like notation: `E(n)^k` denotes `zeta_n^k`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{}", v);
        }
        let mut s = String::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() || c < 0 {
                s.push(if c < 0 { '-' } else { '+' });
            }
            let a = c.unsigned_abs();
            let term = match k {
                0 => alloc::format!("{}", a),
                1 => alloc::format!("E({})", self.conductor),
                _ => alloc::format!("E({})^{}", self.conductor, k),
            };
            if k > 0 && a != 1 {
                s.push_str(&alloc::format!("{}*", a));
            }
            s.push_str(&term);
        }
        f.write_str(&s)
    }
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d a proper divisor
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n as u64) {
        if d == n as u64 {
            continue;
        }
        num = div_monic(&num, &cyclotomic_polynomial(d as u32));
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Arithmetic context for `Q(zeta_n)` with cached reductions.
pub struct CycloField {
    n: u32,
    phi: usize,
    // rows[e] = x^e mod Phi_n for e < 2n
    rows: Vec<Vec<i64>>,
    memo: RefCell<HashMap<Vec<i64>, Cyclotomic>>,
}

impl CycloField {
    pub fn new(n: u32) -> Self {
        let n = n.max(1);
        let phi = euler_phi(n as u64) as usize;
        let poly = cyclotomic_polynomial(n);
        let mut rows = Vec::with_capacity(2 * n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..2 * n as usize {
            rows.push(cur.clone());
            // multiply by x and reduce the overflow coefficient
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if phi == 1 {
                cur[0] = 0;
            }
            for j in 0..phi {
                cur[j] -= top * poly[j];
            }
        }
        CycloField { n, phi, rows, memo: RefCell::new(HashMap::new()) }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.phi]
    }

    /// Embed a value whose conductor divides `n`.
    pub fn embed(&self, c: &Cyclotomic) -> Vec<i64> {
        assert!(self.n % c.conductor == 0, "conductor {} does not divide {}", c.conductor, self.n);
        let step = (self.n / c.conductor) as usize;
        let mut v = vec![0i64; self.phi];
        for (i, &a) in c.coeffs.iter().enumerate() {
            if a != 0 {
                for (j, r) in self.rows[i * step].iter().enumerate() {
                    v[j] += a * r;
                }
            }
        }
        v
    }

    /// Sum of `coeff * zeta_n^exp`.
    pub fn from_exponents(&self, terms: &[(u32, i64)]) -> Vec<i64> {
        let mut v = vec![0i64; self.phi];
        for &(e, c) in terms {
            for (j, r) in self.rows[(e % self.n) as usize].iter().enumerate() {
                v[j] += c * r;
            }
        }
        v
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut conv = vec![0i64; 2 * self.phi];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                conv[i + j] += x * y;
            }
        }
        let mut v = conv[..self.phi].to_vec();
        for (e, &c) in conv.iter().enumerate().skip(self.phi) {
            if c != 0 {
                for (j, r) in self.rows[e].iter().enumerate() {
                    v[j] += c * r;
                }
            }
        }
        v
    }

    pub fn add_into(&self, acc: &mut [i64], x: &[i64]) {
        acc.iter_mut().zip(x).for_each(|(a, b)| *a += b);
    }

    pub fn galois(&self, v: &[i64], k: i64) -> Vec<i64> {
        let n = self.n as i64;
        let mut out = vec![0i64; self.phi];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                let e = ((i as i64 * k).rem_euclid(n)) as usize;
                for (j, r) in self.rows[e].iter().enumerate() {
                    out[j] += c * r;
                }
            }
        }
        out
    }

    pub fn conj(&self, v: &[i64]) -> Vec<i64> {
        self.galois(v, -1)
    }

    /// Reduce to the minimal conductor.
    pub fn normalize(&self, v: &[i64]) -> Cyclotomic {
        if v[1..].iter().all(|&c| c == 0) {
            return Cyclotomic::integer(v[0]);
        }
        if let Some(c) = self.memo.borrow().get(v) {
            return c.clone();
        }
        let c = self.normalize_uncached(v);
        self.memo.borrow_mut().insert(v.to_vec(), c.clone());
        c
    }

    fn normalize_uncached(&self, v: &[i64]) -> Cyclotomic {
        let n = self.n as u64;
        for d in divisors(n) {
            if d == n {
                break;
            }
            if d % 4 == 2 {
                continue;
            }
            let fixed = (1..n).filter(|&k| gcd(k, n) == 1 && k % d == 1).all(|k| self.galois(v, k as i64) == v);
            if !fixed {
                continue;
            }
            let step = (n / d) as usize;
            let m = euler_phi(d) as usize;
            let cols: Vec<&Vec<i64>> = (0..m).map(|j| &self.rows[j * step]).collect();
            if let Some(sol) = solve_integral(&cols, v) {
                return Cyclotomic { conductor: d as u32, coeffs: sol };
            }
        }
        Cyclotomic { conductor: self.n, coeffs: v.to_vec() }
    }

    pub fn as_integer(&self, v: &[i64]) -> Option<i64> {
        v[1..].iter().all(|&c| c == 0).then(|| v[0])
    }
}

/// Solve `sum_j x_j * cols[j] = target` for an integral `x`, if one exists.
fn solve_integral(cols: &[&Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let rows = target.len();
    let m = cols.len();
    // augmented matrix over rationals with i128 numerators and common denominators per row
    let mut a: Vec<Vec<i128>> =
        (0..rows).map(|r| (0..m).map(|j| cols[j][r] as i128).chain(core::iter::once(target[r] as i128)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let (f, g) = (a[r][c], a[i][c]);
                for k in 0..=m {
                    a[i][k] = a[i][k] * f - a[r][k] * g;
                }
                let h = a[i].iter().fold(0i128, |h, &x| gcd128(h, x));
                if h > 1 {
                    a[i].iter_mut().for_each(|x| *x /= h);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| row[m] != 0) {
        return None;
    }
    let mut x = vec![0i64; m];
    for (i, &c) in pivots.iter().enumerate() {
        if a[i][m] % a[i][c] != 0 {
            return None;
        }
        x[c] = (a[i][m] / a[i][c]) as i64;
    }
    Some(x)
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
