//! Exact solution sets of "these rational combinations must be integral".

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::smith::diagonalize;
use super::IntMatrix;
use crate::arith;
use crate::error::{Error, Result};

/// `{offset + basis·u + kernel·w : u ∈ ℤ^t, w ∈ ℚ^s}` inside `ℚ^m`.
///
/// Columns of `[basis | kernel]` are linearly independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    pub(crate) dim: usize,
    pub(crate) offset: Vec<BigRational>,
    pub(crate) basis: Vec<Vec<BigRational>>,
    pub(crate) kernel: Vec<Vec<BigRational>>,
}

impl AffineLattice {
    pub fn new(
        offset: Vec<BigRational>,
        basis: Vec<Vec<BigRational>>,
        kernel: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        let dim = offset.len();
        for col in basis.iter().chain(&kernel) {
            if col.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: col.len(),
                });
            }
        }
        let all: Vec<Vec<BigRational>> = basis.iter().chain(&kernel).cloned().collect();
        if rational_rank(&all, dim) != all.len() {
            return Err(Error::InvalidArgument(
                "lattice generators are linearly dependent".into(),
            ));
        }
        Ok(Self {
            dim,
            offset,
            basis,
            kernel,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offset(&self) -> &[BigRational] {
        &self.offset
    }

    /// Integer directions, as columns.
    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    /// Rational directions along which the constraints vanish identically.
    pub fn kernel(&self) -> &[Vec<BigRational>] {
        &self.kernel
    }

    /// `offset + basis·u`.
    pub fn point(&self, u: &[BigInt]) -> Vec<BigRational> {
        assert_eq!(u.len(), self.basis.len());
        let mut p = self.offset.clone();
        for (col, k) in self.basis.iter().zip(u) {
            let k = BigRational::from_integer(k.clone());
            for (x, c) in p.iter_mut().zip(col) {
                *x += c * &k;
            }
        }
        p
    }

    /// Exact membership test.
    pub fn contains(&self, a: &[BigRational]) -> Result<bool> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: a.len(),
            });
        }
        let rhs: Vec<BigRational> = a.iter().zip(&self.offset).map(|(x, o)| x - o).collect();
        let cols: Vec<Vec<BigRational>> =
            self.basis.iter().chain(&self.kernel).cloned().collect();
        Ok(match solve_columns(&cols, &rhs) {
            None => false,
            Some(x) => x[..self.basis.len()].iter().all(arith::is_integer),
        })
    }

    /// Squared covolume of the integer directions modulo the kernel span:
    /// `Gram([L|K]) / Gram(K)`. Two lattices with the same kernel span are
    /// equal iff they contain each other's generators; equal covolume is the
    /// cheap necessary check.
    pub fn covolume_squared(&self) -> BigRational {
        let all: Vec<Vec<BigRational>> = self.basis.iter().chain(&self.kernel).cloned().collect();
        let full = gram_determinant(&all);
        let ker = gram_determinant(&self.kernel);
        full / ker
    }
}

fn gram_determinant(cols: &[Vec<BigRational>]) -> BigRational {
    let n = cols.len();
    let mut g: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    cols[i]
                        .iter()
                        .zip(&cols[j])
                        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect()
        })
        .collect();
    rational_determinant(&mut g)
}

fn rational_determinant(m: &mut [Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

fn rational_rank(cols: &[Vec<BigRational>], dim: usize) -> usize {
    // Row-reduce the transpose: rows are the given vectors.
    let mut rows: Vec<Vec<BigRational>> = cols.to_vec();
    let mut rank = 0;
    for c in 0..dim {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                for j in 0..dim {
                    let d = &f * &rows[rank][j];
                    rows[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `Σ x_j cols[j] = rhs` exactly, if consistent. Columns independent.
fn solve_columns(cols: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let m = rhs.len();
    // Augmented m x (n+1).
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n].clone();
    }
    Some(x)
}

/// The exact set `{a ∈ ℚ^m : P·a + w ∈ ℤ^N}`; `None` when it is empty.
///
/// Denominators are cleared to `A·a + c ∈ qℤ^N`; with `U·A·V = D` and
/// `a = V·y` the conditions decouple into `D_jj·y_j + (Uc)_j ∈ qℤ`.
pub fn solve_integrality(
    p: &[Vec<BigRational>],
    w: &[BigRational],
    m: usize,
) -> Result<Option<AffineLattice>> {
    if p.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            actual: w.len(),
        });
    }
    if let Some(bad) = p.iter().find(|row| row.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: bad.len(),
        });
    }
    let q = arith::common_denominator(p.iter().flatten().chain(w));
    let scale = BigRational::from_integer(q.clone());

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (row, wi) in p.iter().zip(w) {
        let c = (wi * &scale).to_integer().mod_floor(&q);
        if row.iter().all(Zero::is_zero) {
            if !c.is_zero() {
                return Ok(None);
            }
            continue;
        }
        rows.push(row.iter().map(|x| (x * &scale).to_integer()).collect());
        rhs.push(vec![c]);
    }
    let n_rows = rows.len();
    let mut work = IntMatrix::from_big_rows(rows, m);
    let mut carry = IntMatrix::from_big_rows(rhs, 1);
    let mut v = IntMatrix::identity(m);
    let rank = diagonalize(&mut work, Some(&mut carry), Some(&mut v));

    if (rank..n_rows).any(|i| !carry[(i, 0)].is_multiple_of(&q)) {
        return Ok(None);
    }

    let mut y0 = vec![BigRational::zero(); m];
    let mut steps = Vec::with_capacity(rank);
    for j in 0..rank {
        let djj = work[(j, j)].clone();
        let target = (-&carry[(j, 0)]).mod_floor(&q);
        y0[j] = BigRational::new(target, djj.clone());
        steps.push(BigRational::new(q.clone(), djj));
    }
    let v_col = |j: usize| -> Vec<BigRational> {
        (0..m)
            .map(|i| BigRational::from_integer(v[(i, j)].clone()))
            .collect()
    };
    let mut offset = vec![BigRational::zero(); m];
    for j in 0..rank {
        if y0[j].is_zero() {
            continue;
        }
        for (o, vij) in offset.iter_mut().zip(v_col(j)) {
            *o += &y0[j] * vij;
        }
    }
    let basis = (0..rank)
        .map(|j| v_col(j).into_iter().map(|x| x * &steps[j]).collect())
        .collect();
    let kernel = (rank..m).map(v_col).collect();
    Ok(Some(AffineLattice {
        dim: m,
        offset,
        basis,
        kernel,
    }))
}

/// An affine map `a ↦ constant + linear·a` from the ambient parameter space
/// into some coordinate space.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub constant: Vec<BigRational>,
    /// One row per output coordinate, one column per ambient parameter.
    pub linear: Vec<Vec<BigRational>>,
}

/// An affine map restricted to the lattice parameters `u`, with integer data.
#[derive(Clone, Debug)]
pub struct IntegralAffineMap {
    pub constant: Vec<BigInt>,
    /// One column per lattice parameter.
    pub columns: Vec<Vec<BigInt>>,
}

impl IntegralAffineMap {
    /// Residues of `constant + Σ u_k columns_k` modulo `modulus`.
    pub fn evaluate_mod(&self, u: &[u64], modulus: u64) -> Vec<u64> {
        let m = BigInt::from(modulus);
        let mut out: Vec<BigInt> = self.constant.clone();
        for (col, &uk) in self.columns.iter().zip(u) {
            if uk == 0 {
                continue;
            }
            let uk = BigInt::from(uk);
            for (o, c) in out.iter_mut().zip(col) {
                *o += c * &uk;
            }
        }
        out.iter()
            .map(|x| x.mod_floor(&m).to_u64().expect("residue fits"))
            .collect()
    }
}

impl AffineMap {
    /// Pulls the map back along `u ↦ offset + basis·u`; fails unless the
    /// result is integer valued. Kernel directions must not move the map.
    pub fn restrict(&self, lat: &AffineLattice) -> Result<IntegralAffineMap> {
        let eval = |a: &[BigRational]| -> Vec<BigRational> {
            self.linear
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(a)
                        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
                })
                .collect()
        };
        for k in &lat.kernel {
            if eval(k).iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidArgument(
                    "map is not constant along the lattice kernel".into(),
                ));
            }
        }
        let to_int = |v: Vec<BigRational>| -> Result<Vec<BigInt>> {
            v.into_iter()
                .map(|x| {
                    if arith::is_integer(&x) {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::NonIntegralResidueMap)
                    }
                })
                .collect()
        };
        let constant = to_int(
            eval(&lat.offset)
                .into_iter()
                .zip(&self.constant)
                .map(|(x, c)| x + c)
                .collect(),
        )?;
        let columns = lat
            .basis
            .iter()
            .map(|col| to_int(eval(col)))
            .collect::<Result<_>>()?;
        Ok(IntegralAffineMap { constant, columns })
    }
}

/// One attained residue tuple and the parameters that first produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResiduePoint {
    pub params: Vec<u64>,
    pub values: Vec<Vec<u64>>,
}

/// Every tuple `(C_1 mod M, C_2 mod M, ...)` attained as the lattice
/// parameters range over `(ℤ/M)^t`, without duplicates, in order of first
/// appearance under lexicographic enumeration of the parameters.
pub fn residue_points(
    lat: &AffineLattice,
    maps: &[AffineMap],
    modulus: u64,
) -> Result<Vec<ResiduePoint>> {
    let restricted: Vec<IntegralAffineMap> =
        maps.iter().map(|m| m.restrict(lat)).collect::<Result<_>>()?;
    let t = lat.basis.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for_each_residue(t, modulus, |u| {
        let values: Vec<Vec<u64>> = restricted.iter().map(|m| m.evaluate_mod(u, modulus)).collect();
        if seen.insert(values.clone()) {
            out.push(ResiduePoint {
                params: u.to_vec(),
                values,
            });
        }
        true
    });
    Ok(out)
}

/// Visits `(ℤ/M)^t` in lexicographic order until `visit` returns false.
pub fn for_each_residue(t: usize, modulus: u64, mut visit: impl FnMut(&[u64]) -> bool) {
    let mut u = vec![0u64; t];
    loop {
        if !visit(&u) {
            return;
        }
        let mut k = t;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            u[k] += 1;
            if u[k] < modulus {
                break;
            }
            u[k] = 0;
        }
    }
}
