//! Exact character tables.
//!
//! Concrete groups go through Dixon–Schneider: the class-multiplication
//! matrices are simultaneously diagonalized over a prime field `F_p` with
//! `p ≡ 1 (mod exp G)`, and values are lifted back to cyclotomics through the
//! eigenvalue multiplicities of each element. Direct products are handled by
//! Kronecker composition of the factor tables.

use alloc::vec;
use alloc::vec::Vec;

use crate::cyclo::{CycloField, Cyclotomic};
use crate::error::{Error, Result};
use crate::modp::{char_poly, choose_prime, inv_mod, mul_mod, nullspace, pow_mod, primitive_root, rref};
use crate::perm::{ConjugacyClasses, PermGroup};
use crate::util::{isqrt, lcm};

/// Class sizes, element orders, power maps and structure constants of a
/// concretely enumerated group.
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    pub order: u64,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    /// `powers[k][t]` is the class of `g_k^t` for `t < order(g_k)`.
    pub powers: Vec<Vec<u32>>,
    // a[(i*r + j)*r + k] = #{y in C_j : x_i y in C_k}
    consts: Vec<u32>,
}

impl ClassAlgebra {
    pub fn from_classes(cc: &ConjugacyClasses) -> Self {
        let table = cc.table();
        let r = cc.len();
        let n = table.len();
        let mut consts = vec![0u32; r * r * r];
        let reps: Vec<u32> = cc.representatives.iter().map(|g| table.index_of(g).unwrap()).collect();
        for (i, &x) in reps.iter().enumerate() {
            let xp = table.get(x);
            for y in 0..n as u32 {
                let j = cc.class_of_index(y);
                let k = cc.class_of(&xp.compose(table.get(y))).unwrap();
                consts[(i * r + j) * r + k] += 1;
            }
        }
        let powers = cc
            .representatives
            .iter()
            .zip(&cc.element_orders)
            .map(|(g, &o)| {
                let mut out = Vec::with_capacity(o as usize);
                let mut cur = g.pow(0);
                for _ in 0..o {
                    out.push(cc.class_of(&cur).unwrap() as u32);
                    cur = cur.compose(g);
                }
                out
            })
            .collect();
        ClassAlgebra {
            order: n as u64,
            sizes: cc.sizes.clone(),
            element_orders: cc.element_orders.clone(),
            powers,
            consts,
        }
    }

    pub fn from_group(g: &PermGroup, cap: u64) -> Result<Self> {
        Ok(Self::from_classes(&g.conjugacy_classes(cap)?))
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// `#{y in C_j : x y in C_k}` for a fixed `x in C_i`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.len();
        self.consts[(i * r + j) * r + k]
    }

    /// Classes met by the product `C_i C_j`.
    pub fn product_support(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&k| self.constant(i, j, k) > 0)
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1, |e, &o| lcm(e, o))
    }

    pub fn inverse_class(&self, k: usize) -> usize {
        let o = self.element_orders[k] as usize;
        self.powers[k][(o - 1) % o] as usize
    }

    pub fn power_class(&self, k: usize, t: i64) -> usize {
        let o = self.element_orders[k] as i64;
        self.powers[k][t.rem_euclid(o) as usize] as usize
    }
}

/// A complete irreducible character table.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub order: u64,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    pub inverse_class: Vec<usize>,
    pub square_class: Vec<usize>,
    /// Rows are irreducibles, columns are classes.
    pub characters: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u64>,
    pub indicators: Vec<i8>,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1, |e, &o| lcm(e, o))
    }

    /// Number of irreducibles of degree 2 with indicator −1, i.e. copies of
    /// the quaternions in the real group algebra.
    pub fn m_quaternionic(&self) -> u64 {
        self.count(|d, nu| d == 2 && nu == -1)
    }

    /// Number of real-valued linear characters.
    pub fn real_linear(&self) -> u64 {
        self.count(|d, nu| d == 1 && nu == 1)
    }

    fn count(&self, f: impl Fn(u64, i8) -> bool) -> u64 {
        self.degrees.iter().zip(&self.indicators).filter(|(&d, &nu)| f(d, nu)).count() as u64
    }

    /// Classes in the kernel of character `i`.
    pub fn kernel(&self, i: usize) -> Vec<usize> {
        let d = Cyclotomic::integer(self.degrees[i] as i64);
        (0..self.class_count()).filter(|&k| self.characters[i][k] == d).collect()
    }

    pub fn is_real(&self, i: usize) -> bool {
        (0..self.class_count()).all(|k| self.characters[i][self.inverse_class[k]] == self.characters[i][k])
    }

    pub fn is_abelian(&self) -> bool {
        self.class_count() as u64 == self.order
    }

    /// Exact check of both orthogonality relations, the degree sum and the
    /// indicator range. Returns a description of the first failure.
    pub fn verify(&self) -> core::result::Result<(), &'static str> {
        let r = self.class_count();
        if self.characters.len() != r {
            return Err("table is not square");
        }
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != self.order {
            return Err("sum of squared degrees differs from the group order");
        }
        if self.sizes.iter().sum::<u64>() != self.order {
            return Err("class sizes do not sum to the group order");
        }
        for (i, row) in self.characters.iter().enumerate() {
            if row[0].as_integer() != Some(self.degrees[i] as i64) {
                return Err("first column is not the degree");
            }
            let nu = self.indicators[i];
            if !(-1..=1).contains(&nu) || (nu != 0) != self.is_real(i) {
                return Err("indicator inconsistent with reality");
            }
        }
        let e = self.exponent() as u32;
        let f = CycloField::new(e);
        let vals: Vec<Vec<Vec<i64>>> = self.characters.iter().map(|row| row.iter().map(|c| f.embed(c)).collect()).collect();
        let conj: Vec<Vec<Vec<i64>>> = vals.iter().map(|row| row.iter().map(|v| f.conj(v)).collect()).collect();
        for i in 0..r {
            for j in i..r {
                let mut acc = f.zero();
                for k in 0..r {
                    let t = f.mul(&vals[i][k], &conj[j][k]);
                    t.iter().zip(acc.iter_mut()).for_each(|(x, a)| *a += x * self.sizes[k] as i64);
                }
                let want = if i == j { self.order as i64 } else { 0 };
                if f.as_integer(&acc) != Some(want) {
                    return Err("row orthogonality fails");
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = f.zero();
                for i in 0..r {
                    f.add_into(&mut acc, &f.mul(&vals[i][k], &conj[i][l]));
                }
                let want = if k == l { (self.order / self.sizes[k]) as i64 } else { 0 };
                if f.as_integer(&acc) != Some(want) {
                    return Err("column orthogonality fails");
                }
            }
        }
        Ok(())
    }

    /// Table of the trivial group.
    pub fn trivial() -> Self {
        CharacterTable {
            order: 1,
            sizes: vec![1],
            element_orders: vec![1],
            inverse_class: vec![0],
            square_class: vec![0],
            characters: vec![vec![Cyclotomic::one()]],
            degrees: vec![1],
            indicators: vec![1],
        }
    }
}

/// Frobenius–Schur indicators through the squaring class map.
fn indicators(order: u64, sizes: &[u64], square: &[usize], chars: &[Vec<Cyclotomic>], f: &CycloField) -> Result<Vec<i8>> {
    chars
        .iter()
        .map(|row| {
            let mut acc = f.zero();
            for (k, &s) in sizes.iter().enumerate() {
                let v = f.embed(&row[square[k]]);
                v.iter().zip(acc.iter_mut()).for_each(|(x, a)| *a += x * s as i64);
            }
            match f.as_integer(&acc) {
                Some(t) if t % order as i64 == 0 && (t / order as i64).abs() <= 1 => Ok((t / order as i64) as i8),
                _ => Err(Error::Validation {
                    name: "indicator".into(),
                    expected: "-1, 0 or 1".into(),
                    computed: alloc::format!("{:?}", acc),
                }),
            }
        })
        .collect()
}

fn sort_rows(chars: &mut [Vec<Cyclotomic>]) {
    chars.sort_by(|a, b| {
        let (da, db) = (a[0].as_integer().unwrap_or(0), b[0].as_integer().unwrap_or(0));
        da.cmp(&db).then_with(|| a.cmp(b))
    });
}

/// Dixon–Schneider over `F_p`.
pub fn dixon_schneider(alg: &ClassAlgebra) -> Result<CharacterTable> {
    let r = alg.len();
    let order = alg.order;
    let e = alg.exponent();
    let p = choose_prime(e, 2 * isqrt(order) + 2);
    let bad = |what: &str| Error::Validation { name: "dixon-schneider".into(), expected: what.into(), computed: alloc::format!("p = {}", p) };

    // M_j[i][k] = c_ijk = |C_i| a_ijk / |C_k|
    let matrix = |j: usize| -> Vec<Vec<u64>> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| {
                        let a = alg.constant(i, j, k) as u64;
                        (alg.sizes[i] * a / alg.sizes[k]) % p
                    })
                    .collect()
            })
            .collect()
    };

    let mut full: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|k| (i == k) as u64).collect()).collect();
    let piv: Vec<usize> = rref(&mut full, p);
    let mut spaces: Vec<(Vec<Vec<u64>>, Vec<usize>)> = vec![(full, piv)];
    for j in 1..r {
        if spaces.iter().all(|(b, _)| b.len() == 1) {
            break;
        }
        let m = matrix(j);
        let mut next = Vec::new();
        for (basis, pivots) in spaces {
            if basis.len() == 1 {
                next.push((basis, pivots));
                continue;
            }
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..r).map(|i| m[i].iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, p)) % p)).collect())
                .collect();
            let dim = basis.len();
            let rmat: Vec<Vec<u64>> = images.iter().map(|img| pivots.iter().map(|&c| img[c]).collect()).collect();
            let cp = char_poly(&rmat, p);
            let evs = crate::modp::roots(&cp, p);
            if evs.len() == 1 {
                next.push((basis, pivots));
                continue;
            }
            let mut covered = 0;
            for lam in evs {
                // x R = lam x  <=>  (R - lam)^T x^T = 0
                let t: Vec<Vec<u64>> =
                    (0..dim).map(|c| (0..dim).map(|s| (rmat[s][c] + if s == c { p - lam } else { 0 }) % p).collect()).collect();
                let xs = nullspace(&t, dim, p);
                covered += xs.len();
                let mut sub: Vec<Vec<u64>> = xs
                    .iter()
                    .map(|x| {
                        (0..r).map(|c| x.iter().zip(&basis).fold(0u64, |acc, (&xi, b)| (acc + mul_mod(xi, b[c], p)) % p)).collect()
                    })
                    .collect();
                let sp = rref(&mut sub, p);
                next.push((sub, sp));
            }
            if covered != dim {
                return Err(bad("split eigenspaces"));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(bad("one eigenvector per class"));
    }

    let z = primitive_root(p);
    let field = CycloField::new(e as u32);
    let mut chars = Vec::with_capacity(r);
    for (basis, _) in spaces {
        let mut w = basis[0].clone();
        if w[0] == 0 {
            return Err(bad("central character with w_0 != 0"));
        }
        let inv0 = inv_mod(w[0], p);
        w.iter_mut().for_each(|x| *x = mul_mod(*x, inv0, p));
        // d^2 = |G| / sum_k w_k w_k* / |C_k|
        let mut s = 0u64;
        for k in 0..r {
            let t = mul_mod(w[k], w[alg.inverse_class(k)], p);
            s = (s + mul_mod(t, inv_mod(alg.sizes[k] % p, p), p)) % p;
        }
        let d2 = mul_mod(order % p, inv_mod(s, p), p);
        let d = (1..=isqrt(order)).find(|&d| (d * d) % p == d2).ok_or_else(|| bad("degree"))?;
        let vals: Vec<u64> = (0..r).map(|k| mul_mod(mul_mod(d, w[k], p), inv_mod(alg.sizes[k] % p, p), p)).collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let o = alg.element_orders[k];
            let rho = pow_mod(z, (p - 1) / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut terms = Vec::new();
            for l in 0..o {
                let mut m = 0u64;
                for t in 0..o {
                    let v = vals[alg.power_class(k, t as i64)];
                    let rt = pow_mod(rho, (p - 1 - (l * t) % (p - 1)) % (p - 1), p);
                    m = (m + mul_mod(v, rt, p)) % p;
                }
                m = mul_mod(m, inv_o, p);
                if m > d {
                    return Err(bad("eigenvalue multiplicities"));
                }
                if m > 0 {
                    terms.push(((l * (e / o)) as u32, m as i64));
                }
            }
            row.push(field.normalize(&field.from_exponents(&terms)));
        }
        chars.push(row);
    }
    sort_rows(&mut chars);
    let inverse_class: Vec<usize> = (0..r).map(|k| alg.inverse_class(k)).collect();
    let square_class: Vec<usize> = (0..r).map(|k| alg.power_class(k, 2)).collect();
    let ind = indicators(order, &alg.sizes, &square_class, &chars, &field)?;
    let degrees = chars.iter().map(|row| row[0].as_integer().unwrap() as u64).collect();
    Ok(CharacterTable {
        order,
        sizes: alg.sizes.clone(),
        element_orders: alg.element_orders.clone(),
        inverse_class,
        square_class,
        characters: chars,
        degrees,
        indicators: ind,
    })
}

/// Character table of a direct product. Class `(i, j)` has index
/// `i * |classes(b)| + j`; rows are re-sorted and indicators recomputed.
pub fn product_table(a: &CharacterTable, b: &CharacterTable) -> CharacterTable {
    let (ra, rb) = (a.class_count(), b.class_count());
    let idx = |i: usize, j: usize| i * rb + j;
    let e = lcm(a.exponent(), b.exponent()) as u32;
    let f = CycloField::new(e);
    let ea: Vec<Vec<Vec<i64>>> = a.characters.iter().map(|row| row.iter().map(|c| f.embed(c)).collect()).collect();
    let eb: Vec<Vec<Vec<i64>>> = b.characters.iter().map(|row| row.iter().map(|c| f.embed(c)).collect()).collect();
    let mut chars = Vec::with_capacity(ra * rb);
    for ca in &ea {
        for cb in &eb {
            let mut row = Vec::with_capacity(ra * rb);
            for va in ca {
                for vb in cb {
                    row.push(f.normalize(&f.mul(va, vb)));
                }
            }
            chars.push(row);
        }
    }
    sort_rows(&mut chars);
    let mut sizes = vec![0; ra * rb];
    let mut orders = vec![0; ra * rb];
    let mut inverse_class = vec![0; ra * rb];
    let mut square_class = vec![0; ra * rb];
    for i in 0..ra {
        for j in 0..rb {
            let k = idx(i, j);
            sizes[k] = a.sizes[i] * b.sizes[j];
            orders[k] = lcm(a.element_orders[i], b.element_orders[j]);
            inverse_class[k] = idx(a.inverse_class[i], b.inverse_class[j]);
            square_class[k] = idx(a.square_class[i], b.square_class[j]);
        }
    }
    let order = a.order * b.order;
    let ind = indicators(order, &sizes, &square_class, &chars, &f).expect("indicators of a product table");
    let degrees = chars.iter().map(|row| row[0].as_integer().unwrap() as u64).collect();
    CharacterTable { order, sizes, element_orders: orders, inverse_class, square_class, characters: chars, degrees, indicators: ind }
}

/// Character table of a concrete permutation group.
pub fn character_table(g: &PermGroup, cap: u64) -> Result<CharacterTable> {
    if g.order() == 1 {
        return Ok(CharacterTable::trivial());
    }
    dixon_schneider(&ClassAlgebra::from_group(g, cap)?)
}

#[cfg(test)]
mod chartab_tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::present::{coset_enumerate, Presentation};

    fn group(rel: &str) -> PermGroup {
        coset_enumerate(&Presentation::parse(rel).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn cyclic_two() {
        let c2 = PermGroup::new(2, vec![Permutation::from_images(vec![1, 0]).unwrap()]).unwrap();
        let t = character_table(&c2, 1000).unwrap();
        assert_eq!(t.degrees, vec![1, 1]);
        assert_eq!(t.characters[0][1].as_integer(), Some(-1));
        t.verify().unwrap();
    }

    #[test]
    fn quaternion_eight() {
        let t = character_table(&group("x,y | x^4, x^2 = y^2, y^-1*x*y*x"), 1000).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
        assert_eq!(t.indicators[4], -1);
        assert_eq!(t.m_quaternionic(), 1);
        assert_eq!(t.real_linear(), 4);
        t.verify().unwrap();
    }

    #[test]
    fn cyclic_five_has_irrational_values() {
        let t = character_table(&group("x | x^5"), 1000).unwrap();
        assert_eq!(t.indicators.iter().filter(|&&n| n == 0).count(), 4);
        assert!(t.characters.iter().any(|row| row[1].conductor() == 5));
        t.verify().unwrap();
    }

    #[test]
    fn binary_octahedral() {
        let t = character_table(&group("s,t | s^3 = t^4 = (s*t)^2"), 1000).unwrap();
        let mut d = t.degrees.clone();
        d.sort();
        assert_eq!(d, vec![1, 1, 2, 2, 2, 3, 3, 4]);
        assert_eq!(t.m_quaternionic(), 2);
        t.verify().unwrap();
    }

    #[test]
    fn product_with_trivial_is_identity() {
        let t = character_table(&group("x,y | x^4, x^2 = y^2, y^-1*x*y*x"), 1000).unwrap();
        assert_eq!(product_table(&t, &CharacterTable::trivial()), t);
    }

    #[test]
    fn product_counts() {
        let q8 = character_table(&group("x,y | x^4, x^2 = y^2, y^-1*x*y*x"), 1000).unwrap();
        let c2 = character_table(&group("x | x^2"), 1000).unwrap();
        let p = product_table(&q8, &c2);
        p.verify().unwrap();
        assert_eq!(p.m_quaternionic(), 2);
    }
}
