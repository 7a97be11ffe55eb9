#![allow(dead_code)]

use std::sync::Arc;

use brauer_core::symmetric::{elementary, ModPoly};
use brauer_core::{AlgebraContext, BrauerClassSpec, IntMatrix, MultiVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn xy(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> MultiVector {
    MultiVector::x(ctx, i).wedge(&MultiVector::y(ctx, j))
}

/// `x1∧(y1+y3) + x2∧y2 + x3∧y1` on a fourfold, as an integral form.
pub fn fourfold_form() -> MultiVector {
    let ctx = AlgebraContext::new(4).unwrap();
    xy(&ctx, 1, 1) + xy(&ctx, 1, 3) + xy(&ctx, 2, 2) + xy(&ctx, 3, 1)
}

/// The class of [`fourfold_form`] over 2.
pub fn fourfold() -> BrauerClassSpec {
    BrauerClassSpec::new(&fourfold_form(), 2).unwrap()
}

/// `x1∧(y1+y2) + x2∧(y1+y3) + x3∧(y1+y2+y3)` on a threefold, period 2.
pub fn threefold() -> BrauerClassSpec {
    let ctx = AlgebraContext::new(3).unwrap();
    let b = xy(&ctx, 1, 1)
        + xy(&ctx, 1, 2)
        + xy(&ctx, 2, 1)
        + xy(&ctx, 2, 3)
        + xy(&ctx, 3, 1)
        + xy(&ctx, 3, 2)
        + xy(&ctx, 3, 3);
    BrauerClassSpec::new(&b, 2).unwrap()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    rref(&mut m.to_vec()).len()
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `M x = v`, if any.
pub fn solve(m: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .zip(v)
        .map(|(row, x)| row.iter().cloned().chain(std::iter::once(x.clone())).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn mat_vec(m: &[Vec<BigRational>], a: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(a).fold(BigRational::zero(), |s, (x, y)| s + x * y))
        .collect()
}

pub fn is_integral(v: &[BigRational]) -> bool {
    v.iter().all(BigRational::is_integer)
}

/// Determinant by cofactor expansion (small matrices only).
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let s = if c % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            s * &m[0][c] * det(&minor)
        })
        .sum()
}

/// Gram determinant of the given columns.
pub fn gram(cols: &[Vec<BigRational>]) -> BigRational {
    let k = cols.len();
    let g: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| cols[i].iter().zip(&cols[j]).fold(BigRational::zero(), |s, (x, y)| s + x * y))
                .collect()
        })
        .collect();
    rational_det(g)
}

pub fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let t = &m[c][k] * &f;
                m[r][k] -= t;
            }
        }
    }
    d
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from determinantal divisors `d_k = gcd of k×k minors`.
pub fn invariant_factors_oracle(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (r, c) = (a.len(), a[0].len());
    let mut divisors = vec![BigInt::one()];
    for k in 1..=r.min(c) {
        let mut d = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
                    .collect();
                d = d.gcd(&det(&minor));
            }
        }
        divisors.push(d);
    }
    (1..divisors.len())
        .map(|k| {
            if divisors[k].is_zero() {
                BigInt::zero()
            } else {
                &divisors[k] / &divisors[k - 1]
            }
        })
        .collect()
}

pub fn random_system(rng: &mut ChaCha8Rng) -> (Vec<Vec<BigRational>>, Vec<BigRational>, usize) {
    let m = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=3);
    let entry = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.3) {
            q(0, 1)
        } else {
            q(rng.gen_range(-4..=4), rng.gen_range(1..=4))
        }
    };
    let p = (0..n).map(|_| (0..m).map(|_| entry(rng)).collect()).collect();
    let w = (0..n).map(|_| entry(rng)).collect();
    (p, w, m)
}

pub fn grid(m: usize, den: i64, span: i64) -> Vec<Vec<BigRational>> {
    let values: Vec<BigRational> = (-span * den..span * den).map(|k| q(k, den)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| values.iter().map(move |x| [v.clone(), vec![x.clone()]].concat()))
            .collect();
    }
    out
}

/// `e_i(u)` with `u_a = t_a + t_a^p`, built root by root.
pub fn elementary_of_total_powers(p: u64, i: usize, roots: usize) -> ModPoly {
    let u: Vec<ModPoly> = (0..roots)
        .map(|a| {
            let t = ModPoly::var(roots, p, a);
            t.add(&t.pow(p as u32))
        })
        .collect();
    // Π_a (1 + s·u_a), read off the s^i coefficient by a running recurrence.
    let mut e = vec![ModPoly::constant(roots, p, 1)];
    for ua in &u {
        let mut next = e.clone();
        next.push(ModPoly::zero(roots, p));
        for k in 1..next.len() {
            next[k] = next[k].add(&e[k - 1].mul(ua));
        }
        e = next;
    }
    e.get(i).cloned().unwrap_or_else(|| ModPoly::zero(roots, p))
}

pub fn piece(f: &ModPoly, deg: u32) -> ModPoly {
    f.homogeneous_part(&vec![1; f.nvars()], deg)
}

/// Substitutes `c_k = e_k(roots)` into a polynomial in `c_1, c_2, …`.
pub fn in_roots(q: &ModPoly, roots: usize) -> ModPoly {
    let p = q.modulus();
    let mut out = ModPoly::zero(roots, p);
    for (mono, c) in q.terms() {
        let mut t = ModPoly::constant(roots, p, c);
        for (k, &e) in mono.iter().enumerate() {
            if e > 0 {
                t = t.mul(&elementary(roots, k + 1, p).pow(e));
            }
        }
        out = out.add(&t);
    }
    out
}

