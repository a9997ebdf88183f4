//! Small prime-field linear algebra for the character table engine.

use alloc::vec;
use alloc::vec::Vec;

use crate::util::{is_prime, prime_factors};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Symmetric lift of a residue into `(-p/2, p/2]`.
pub fn lift(v: u64, p: u64) -> i64 {
    if v > p / 2 {
        v as i64 - p as i64
    } else {
        v as i64
    }
}

pub fn primitive_root(p: u64) -> u64 {
    let qs = prime_factors(p - 1);
    (2..p).find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > bound`.
pub fn choose_prime(e: u64, bound: u64) -> u64 {
    let mut p = (bound / e + 1) * e + 1;
    while !is_prime(p) {
        p += e;
    }
    p
}

/// Row-reduce in place; returns pivot columns.
pub fn rref(m: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        m[r].iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul_mod(f, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    pivots
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, p);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (row, &pc) in a.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial `det(xI - m)`, constant term first, via
/// reduction to upper Hessenberg form.
pub fn char_poly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = inv_mod(h[k + 1][k], p);
        for i in k + 2..n {
            let f = mul_mod(h[i][k], inv, p);
            if f == 0 {
                continue;
            }
            // row_i -= f row_{k+1}; col_{k+1} += f col_i
            for j in 0..n {
                let t = mul_mod(f, h[k + 1][j], p);
                h[i][j] = (h[i][j] + p - t) % p;
            }
            for row in h.iter_mut() {
                let t = mul_mod(f, row[i], p);
                row[k + 1] = (row[k + 1] + t) % p;
            }
        }
    }
    // polys[i] = char poly of leading i x i block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for i in 0..n {
        // (x - h_ii) * p_i
        let prev = &polys[i];
        let mut next = vec![0u64; i + 2];
        for (j, &c) in prev.iter().enumerate() {
            next[j + 1] = (next[j + 1] + c) % p;
            next[j] = (next[j] + p - mul_mod(h[i][i], c, p)) % p;
        }
        let mut t = 1u64;
        for j in (0..i).rev() {
            t = mul_mod(t, h[j + 1][j], p);
            let c = mul_mod(t, h[j][i], p);
            if c == 0 {
                continue;
            }
            for (k, &q) in polys[j].iter().enumerate() {
                next[k] = (next[k] + p - mul_mod(c, q, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// All distinct roots in `F_p` by exhaustive evaluation.
pub fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p) == 0)
        .collect()
}
