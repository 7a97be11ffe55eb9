//! Brauer classes on a very general principally polarized abelian g-fold,
//! given by an integral 2-form `b` and a period `n` (so `B = b/n`).

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::exterior::{AlgebraContext, MultiVector};

/// A topologically trivial Brauer class `α` with B-field `b/n`.
///
/// `b` is stored reduced into `[0, n)` and `n` is the content-normalized
/// period: `b mod n` is not divisible by any proper divisor of `n`.
#[derive(Clone)]
pub struct BrauerClassSpec {
    ctx: Arc<AlgebraContext>,
    b: MultiVector,
    n: u64,
}

impl PartialEq for BrauerClassSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.b == other.b
    }
}

impl Eq for BrauerClassSpec {}

impl fmt::Debug for BrauerClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BrauerClassSpec(g={}, n={}, b={})", self.g(), self.n, self.b)
    }
}

impl BrauerClassSpec {
    pub fn new(b: &MultiVector, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        if !b.is_zero() && b.degree() != Some(2) {
            return Err(Error::NotTwoForm(b.degree().unwrap_or(0)));
        }
        let terms = b.integer_terms().ok_or(Error::NotIntegral)?;
        let ctx = Arc::clone(b.context());
        let coords: Vec<(u32, u64)> = terms
            .iter()
            .map(|(blade, c)| (*blade, arith::reduce_mod(c, n)))
            .collect();
        Ok(Self::from_residues(&ctx, coords, n))
    }

    /// Builds the class from colex coordinates of `b mod n`.
    pub fn from_coordinates(ctx: &Arc<AlgebraContext>, coords: &[u64], n: u64) -> Result<Self> {
        if coords.len() != ctx.rank(2) {
            return Err(Error::DimensionMismatch {
                expected: ctx.rank(2),
                actual: coords.len(),
            });
        }
        if n == 0 {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        let pairs = ctx.basis(2).iter().copied().zip(coords.iter().map(|c| c % n));
        Ok(Self::from_residues(ctx, pairs.collect(), n))
    }

    fn from_residues(ctx: &Arc<AlgebraContext>, coords: Vec<(u32, u64)>, n: u64) -> Self {
        let content = coords.iter().fold(n, |acc, (_, c)| acc.gcd(c));
        let period = n / content;
        let mut b = MultiVector::zero(ctx);
        for (blade, c) in coords {
            let c = (c / content) % period;
            if c != 0 {
                b = b + MultiVector::from_blade(ctx, blade, BigRational::from_integer(c.into()));
            }
        }
        Self {
            ctx: Arc::clone(ctx),
            b,
            n: period,
        }
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn g(&self) -> usize {
        self.ctx.g()
    }

    pub fn period(&self) -> u64 {
        self.n
    }

    /// The integral form `b`, coefficients in `[0, n)`.
    pub fn form(&self) -> &MultiVector {
        &self.b
    }

    /// `B = b / n`.
    pub fn b_field(&self) -> MultiVector {
        self.b
            .scaled(&BigRational::new(BigInt::one(), BigInt::from(self.n)))
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    /// Colex coordinates of `b mod n`.
    pub fn coordinates(&self) -> Vec<u64> {
        self.b
            .coordinates(2)
            .iter()
            .map(|c| arith::reduce_mod(c.numer(), self.n))
            .collect()
    }

    /// Number of nonzero coordinates of `b mod n`.
    pub fn hamming_weight(&self) -> usize {
        self.coordinates().iter().filter(|c| **c != 0).count()
    }

    fn shifted_coordinates(&self, k: u64) -> Vec<u64> {
        let mut coords = self.coordinates();
        for i in 1..=self.g() {
            let idx = self.ctx.index_of(AlgebraContext::x_bit(i) | AlgebraContext::y_bit(i));
            coords[idx] = (coords[idx] + k) % self.n;
        }
        coords
    }

    /// Coordinates of every representative `b + kθ mod n`, `k = 0..n`.
    pub fn orbit_coordinates(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|k| self.shifted_coordinates(k)).collect()
    }

    /// Least Hamming weight among the representatives `b + kθ mod n`.
    pub fn orbit_hamming_weight(&self) -> usize {
        self.orbit_coordinates()
            .iter()
            .map(|c| c.iter().filter(|x| **x != 0).count())
            .min()
            .unwrap_or(0)
    }

    /// Lexicographically least coordinate vector among `b + kθ mod n`.
    pub fn canonical_coordinates(&self) -> Vec<u64> {
        (0..self.n)
            .map(|k| self.shifted_coordinates(k))
            .min()
            .expect("period is positive")
    }

    /// The representative of `{b + kθ}` with least coordinates, over the same `n`.
    pub fn canonical_representative(&self) -> Self {
        Self::from_coordinates(&self.ctx, &self.canonical_coordinates(), self.n)
            .expect("coordinates have the right length")
    }

    /// The order of `α` in the Brauer group. On a very general abelian
    /// variety `b/n` is trivial iff `b ≡ kθ (mod n)`, so this is the order
    /// of `b` in `H²(ℤ/n) / ⟨θ⟩`, which may be smaller than [`Self::period`].
    pub fn true_period(&self) -> u64 {
        self.n / self.theta_content()
    }

    fn theta_content(&self) -> u64 {
        // b − b_{ω₁}θ has vanishing ω₁ coefficient; its content is the
        // largest divisor e of n with b ≡ kθ (mod e).
        let w1 = AlgebraContext::x_bit(1) | AlgebraContext::y_bit(1);
        let k = self.n - self.coordinates()[self.ctx.index_of(w1)];
        self.shifted_coordinates(k % self.n)
            .iter()
            .fold(self.n, |acc, c| acc.gcd(c))
    }

    /// The same Brauer class written over its true period. Returns `self`
    /// unchanged when the stored period already is the true one.
    pub fn theta_normalized(&self) -> Self {
        let e = self.theta_content();
        if e == 1 {
            return self.clone();
        }
        let w1 = AlgebraContext::x_bit(1) | AlgebraContext::y_bit(1);
        let k = self.n - self.coordinates()[self.ctx.index_of(w1)];
        let coords: Vec<u64> = self
            .shifted_coordinates(k % self.n)
            .iter()
            .map(|c| c / e)
            .collect();
        Self::from_coordinates(&self.ctx, &coords, self.n / e).expect("same basis")
    }

    /// `b = Σ (n/q)·b_q (mod n)` over the maximal prime powers `q | n`.
    pub fn primary_decomposition(&self) -> Vec<Self> {
        let coords = self.coordinates();
        arith::factorize(self.n)
            .into_iter()
            .map(|(p, e)| {
                let q = p.pow(e);
                let cofactor = self.n / q;
                let inv = if q == 1 {
                    0
                } else {
                    arith::mod_inverse(cofactor as i128 % q as i128, q as i128)
                        .expect("cofactor is a unit mod q") as u64
                };
                let part: Vec<u64> = coords
                    .iter()
                    .map(|c| ((*c as u128 * inv as u128) % q as u128) as u64)
                    .collect();
                Self::from_coordinates(&self.ctx, &part, q).expect("same basis")
            })
            .collect()
    }

    /// Minimal number of symbols `u∧v` summing to `b mod n`, from the
    /// symplectic canonical form of `b` over each primary part of `n`.
    pub fn symbol_length(&self) -> usize {
        symbol_length_of(&self.ctx, &self.coordinates(), self.n)
    }

    /// Least symbol length mod `n` over the representatives `b + kθ`.
    pub fn orbit_symbol_length(&self) -> usize {
        (0..self.n)
            .map(|k| symbol_length_of(&self.ctx, &self.shifted_coordinates(k), self.n))
            .min()
            .unwrap_or(0)
    }

    /// [`Self::symbol_length`], cross-checked against exhaustive search when
    /// the group `H²(ℤ/n)` is small enough to enumerate.
    pub fn checked_symbol_length(&self) -> Result<usize> {
        let l = self.symbol_length();
        let size = (self.n as f64).powi(self.ctx.rank(2) as i32);
        if size <= 1.0e4 {
            let brute = symbol_length_brute_force(self);
            if brute != l {
                return Err(Error::SymbolLengthDisagreement(format!(
                    "{self:?}: canonical form gives {l}, exhaustive search {brute}"
                )));
            }
        }
        Ok(l)
    }
}

fn symbol_length_of(ctx: &AlgebraContext, coords: &[u64], n: u64) -> usize {
    if n == 1 {
        return 0;
    }
    let dim = ctx.dim_one_forms();
    let mut a = vec![vec![0i128; dim]; dim];
    for (blade, c) in ctx.basis(2).iter().zip(coords) {
        let i = blade.trailing_zeros() as usize;
        let j = (31 - blade.leading_zeros()) as usize;
        a[i][j] = *c as i128;
        a[j][i] = -(*c as i128);
    }
    arith::factorize(n)
        .into_iter()
        .map(|(p, e)| symplectic_rank(&a, p, e))
        .max()
        .unwrap_or(0)
}

/// Number of hyperbolic planes with scale nonzero mod `p^e` in the canonical
/// form of the alternating matrix `a`.
fn symplectic_rank(a: &[Vec<i128>], p: u64, e: u32) -> usize {
    let q = (p as i128).pow(e);
    let dim = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|row| row.iter().map(|x| x.rem_euclid(q)).collect())
        .collect();
    let val = |x: i128| -> u32 {
        if x == 0 {
            return e;
        }
        arith::valuation_u64(x as u64, p).min(e)
    };
    let mut alive: Vec<usize> = (0..dim).collect();
    let mut planes = 0;
    loop {
        let mut best: Option<(usize, usize, u32)> = None;
        for (ai, &i) in alive.iter().enumerate() {
            for &j in &alive[ai + 1..] {
                let v = val(m[i][j]);
                if v < e && best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((i, j, v)) = best else {
            return planes;
        };
        planes += 1;
        // m[i][j] = p^v·unit; clear row/column i and j by adding multiples.
        let unit = m[i][j] / (p as i128).pow(v);
        let unit_inv = arith::mod_inverse(unit, q).expect("unit is invertible");
        let pv = (p as i128).pow(v);
        for &k in &alive {
            if k == i || k == j {
                continue;
            }
            // e_k += λ e_i + μ e_j with ⟨e_i, e_k'⟩ = ⟨e_j, e_k'⟩ = 0.
            let mu = (-(m[i][k] / pv) * unit_inv).rem_euclid(q);
            let lambda = ((m[j][k] / pv) * unit_inv).rem_euclid(q);
            add_multiple(&mut m, k, i, lambda, q);
            add_multiple(&mut m, k, j, mu, q);
        }
        alive.retain(|&k| k != i && k != j);
    }
}

/// Congruence transform `e_dst += f·e_src` on an alternating matrix mod `q`.
fn add_multiple(m: &mut [Vec<i128>], dst: usize, src: usize, f: i128, q: i128) {
    if f == 0 {
        return;
    }
    let dim = m.len();
    for r in 0..dim {
        m[r][dst] = (m[r][dst] + f * m[r][src]).rem_euclid(q);
    }
    for c in 0..dim {
        m[dst][c] = (m[dst][c] + f * m[src][c]).rem_euclid(q);
    }
}

/// Exhaustive symbol length: breadth-first over sums of `u∧v` mod `n`.
/// Exponential in `C(2g, 2)`; intended for tiny cases and as an oracle.
pub fn symbol_length_brute_force(spec: &BrauerClassSpec) -> usize {
    let n = spec.n;
    let target = spec.coordinates();
    if target.iter().all(|c| *c == 0) {
        return 0;
    }
    let ctx = spec.context();
    let dim = ctx.dim_one_forms();
    let basis2 = ctx.basis(2);
    let one_forms = (n as usize).pow(dim as u32);
    let digits = |mut idx: usize| -> Vec<u64> {
        (0..dim)
            .map(|_| {
                let d = (idx % n as usize) as u64;
                idx /= n as usize;
                d
            })
            .collect()
    };
    let mut symbols: HashSet<Vec<u64>> = HashSet::new();
    for ui in 0..one_forms {
        let u = digits(ui);
        for vi in 0..one_forms {
            let v = digits(vi);
            let w: Vec<u64> = basis2
                .iter()
                .map(|blade| {
                    let i = blade.trailing_zeros() as usize;
                    let j = (31 - blade.leading_zeros()) as usize;
                    let x = u[i] as i128 * v[j] as i128 - u[j] as i128 * v[i] as i128;
                    x.rem_euclid(n as i128) as u64
                })
                .collect();
            symbols.insert(w);
        }
    }
    let mut reached: HashSet<Vec<u64>> = HashSet::new();
    reached.insert(vec![0; basis2.len()]);
    let mut frontier = reached.clone();
    for l in 1..=spec.g() {
        let mut next = HashSet::new();
        for a in &frontier {
            for s in &symbols {
                let sum: Vec<u64> = a.iter().zip(s).map(|(x, y)| (x + y) % n).collect();
                if reached.insert(sum.clone()) {
                    next.insert(sum);
                }
            }
        }
        if reached.contains(&target) {
            return l;
        }
        frontier = next;
    }
    unreachable!("every 2-form is a sum of at most g symbols")
}

/// Integral generators of the Hodge classes, per degree `2j`, `j = 1..=g`.
#[derive(Clone, Debug)]
pub struct HodgeBasis {
    generators: Vec<Vec<MultiVector>>,
}

impl HodgeBasis {
    /// Very general: degree `2j` is spanned by `θ^j/j!`.
    pub fn very_general(ctx: &Arc<AlgebraContext>) -> Self {
        Self {
            generators: (1..=ctx.g())
                .map(|j| vec![MultiVector::theta_power_integral(ctx, j)])
                .collect(),
        }
    }

    /// Arbitrary integral generators; `generators[j-1]` spans degree `2j`.
    pub fn new(ctx: &Arc<AlgebraContext>, generators: Vec<Vec<MultiVector>>) -> Result<Self> {
        if generators.len() != ctx.g() {
            return Err(Error::DimensionMismatch {
                expected: ctx.g(),
                actual: generators.len(),
            });
        }
        for (j, gens) in generators.iter().enumerate() {
            for v in gens {
                if v.context().g() != ctx.g() {
                    return Err(Error::ContextMismatch {
                        left: ctx.g(),
                        right: v.context().g(),
                    });
                }
                if !v.is_zero() && v.degree() != Some(2 * (j + 1)) {
                    return Err(Error::InvalidArgument(format!(
                        "Hodge generator of degree {:?} listed in degree {}",
                        v.degree(),
                        2 * (j + 1)
                    )));
                }
                if !v.is_integral() {
                    return Err(Error::NotIntegral);
                }
            }
        }
        Ok(Self { generators })
    }

    /// Generators in degree `2j`; empty outside `1..=g`.
    pub fn degree(&self, j: usize) -> &[MultiVector] {
        if j == 0 {
            return &[];
        }
        self.generators.get(j - 1).map_or(&[], Vec::as_slice)
    }
}

/// The unknowns of the integrality problem at degree `d`: `c₀` and
/// coordinates `a_j` of `c_j` against the Hodge generators, for `j ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeCoordinates {
    pub d: u64,
    pub c0: BigInt,
    /// `a[j-1]` are the coordinates of `c_j`.
    pub a: Vec<Vec<BigRational>>,
}

impl HodgeCoordinates {
    /// `c_j = a_j · θ^j/j!`.
    pub fn rank_one(d: u64, c0: i64, a: Vec<BigRational>) -> Self {
        Self {
            d,
            c0: BigInt::from(c0),
            a: a.into_iter().map(|x| vec![x]).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    /// `c_1, …, c_m` as classes.
    pub fn classes(&self, basis: &HodgeBasis) -> Result<Vec<MultiVector>> {
        self.a
            .iter()
            .enumerate()
            .map(|(idx, coords)| {
                let gens = basis.degree(idx + 1);
                if gens.len() != coords.len() {
                    return Err(Error::DimensionMismatch {
                        expected: gens.len(),
                        actual: coords.len(),
                    });
                }
                Ok(gens
                    .iter()
                    .zip(coords)
                    .fold(MultiVector::zero(basis_ctx(gens, idx)), |acc, (v, x)| {
                        acc + v.scaled(x)
                    }))
            })
            .collect()
    }
}

fn basis_ctx(gens: &[MultiVector], _j: usize) -> &Arc<AlgebraContext> {
    gens.first()
        .map(MultiVector::context)
        .expect("Hodge generators are nonempty")
}

/// `C(d,i)·B^i·c₀ + Σ_{j=1}^{i} C(d−j, i−j)·B^{i−j}·c_j` with generalized
/// binomials; `classes[j-1] = c_j`, missing `c_j` count as zero.
pub fn p_poly_classes(
    field: &MultiVector,
    d: i64,
    i: usize,
    c0: &BigInt,
    classes: &[MultiVector],
) -> MultiVector {
    let ctx = field.context();
    if i > ctx.g() {
        log::warn!("p_{i} requested on a {}-fold: degree vanishes", ctx.g());
        return MultiVector::zero(ctx);
    }
    let i64i = i as i64;
    let mut acc = field
        .power(i as u32)
        .scaled_int(&(arith::binomial(d, i64i) * c0));
    for (j, c) in classes.iter().enumerate().take(i) {
        let j = j + 1;
        let coeff = arith::binomial(d - j as i64, i64i - j as i64);
        if coeff.is_zero() || c.is_zero() {
            continue;
        }
        acc = acc + field.power((i - j) as u32).wedge(c).scaled_int(&coeff);
    }
    acc
}

/// The degree-`2i` class `p_i^{B,d}(c₀, c₁, …, c_i)` for a very general
/// abelian variety, with `d` taken from `coords`.
pub fn p_poly(spec: &BrauerClassSpec, i: usize, coords: &HodgeCoordinates) -> Result<MultiVector> {
    if i == 0 {
        return Err(Error::InvalidArgument("p_i is defined for i >= 1".into()));
    }
    let basis = HodgeBasis::very_general(spec.context());
    let classes = coords.classes(&basis)?;
    Ok(p_poly_classes(
        &spec.b_field(),
        coords.d as i64,
        i,
        &coords.c0,
        &classes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn xy(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> MultiVector {
        MultiVector::x(ctx, i).wedge(&MultiVector::y(ctx, j))
    }

    fn obsdjp() -> BrauerClassSpec {
        let ctx = AlgebraContext::new(4).unwrap();
        let b = xy(&ctx, 1, 1) + xy(&ctx, 1, 3) + xy(&ctx, 2, 2) + xy(&ctx, 3, 1);
        BrauerClassSpec::new(&b, 2).unwrap()
    }

    fn indec() -> BrauerClassSpec {
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

    #[test]
    fn period_normalization() {
        let ctx = AlgebraContext::new(2).unwrap();
        let b = xy(&ctx, 1, 2).scaled_int(&BigInt::from(2));
        let s = BrauerClassSpec::new(&b, 4).unwrap();
        assert_eq!(s.period(), 2);
        assert_eq!(s.form(), &xy(&ctx, 1, 2));
        assert_eq!(BrauerClassSpec::new(&b, 2).unwrap().period(), 1);
        // θ is trivial in the Brauer group but not as a form.
        let t = BrauerClassSpec::new(&MultiVector::theta(&ctx), 2).unwrap();
        assert_eq!(t.period(), 2);
        assert_eq!(t.true_period(), 1);
        assert!(t.theta_normalized().is_trivial());
        assert_eq!(obsdjp().theta_normalized(), obsdjp());
        assert!(BrauerClassSpec::new(&b.scaled(&r(1, 3)), 2).is_err());
        assert!(BrauerClassSpec::new(&MultiVector::theta_power_integral(&ctx, 2), 2).is_err());
    }

    #[test]
    fn theta_period_drops() {
        // 2(x1y2) + θ over n = 4 is 2·(x1y2) mod θ: period 2.
        let ctx = AlgebraContext::new(2).unwrap();
        let b = xy(&ctx, 1, 2).scaled_int(&BigInt::from(2)) + MultiVector::theta(&ctx);
        let s = BrauerClassSpec::new(&b, 4).unwrap();
        assert_eq!(s.period(), 4);
        assert_eq!(s.true_period(), 2);
        let t = s.theta_normalized();
        assert_eq!(t.period(), 2);
        assert_eq!(t.form(), &xy(&ctx, 1, 2));
    }

    #[test]
    fn weights_and_canonical_forms() {
        assert_eq!(obsdjp().hamming_weight(), 4);
        assert_eq!(indec().hamming_weight(), 7);
        let ctx = AlgebraContext::new(3).unwrap();
        let t = BrauerClassSpec::new(&MultiVector::theta(&ctx), 2).unwrap();
        assert!(t.canonical_representative().form().is_zero());
        for s in [obsdjp(), indec()] {
            let c = s.canonical_representative();
            assert_eq!(c.canonical_representative(), c);
        }
    }

    #[test]
    fn symbol_lengths() {
        assert_eq!(obsdjp().symbol_length(), 3);
        assert_eq!(indec().symbol_length(), 3);
        assert_eq!(indec().orbit_symbol_length(), 3);
        let ctx = AlgebraContext::new(3).unwrap();
        for n in 2..6 {
            assert_eq!(BrauerClassSpec::new(&xy(&ctx, 1, 1), n).unwrap().symbol_length(), 1);
        }
        let theta = BrauerClassSpec::new(&MultiVector::theta(&ctx), 2).unwrap();
        assert_eq!(theta.symbol_length(), 3);
        assert_eq!(theta.orbit_symbol_length(), 0);
    }

    #[test]
    fn symbol_length_mixed_scales() {
        // 2·ω₁ + ω₂ mod 4: two planes, scales 2 and 1; mod 2 only one survives.
        let ctx = AlgebraContext::new(2).unwrap();
        let b = MultiVector::omega(&ctx, 1).scaled_int(&BigInt::from(2)) + MultiVector::omega(&ctx, 2);
        assert_eq!(BrauerClassSpec::new(&b, 4).unwrap().symbol_length(), 2);
        assert_eq!(BrauerClassSpec::new(&b, 2).unwrap().symbol_length(), 1);
        assert_eq!(BrauerClassSpec::new(&b, 6).unwrap().symbol_length(), 2);
    }

    #[test]
    fn primary_parts_recombine() {
        let ctx = AlgebraContext::new(2).unwrap();
        let b = xy(&ctx, 1, 1) + xy(&ctx, 1, 2).scaled_int(&BigInt::from(3))
            + xy(&ctx, 2, 2).scaled_int(&BigInt::from(4));
        let s = BrauerClassSpec::new(&b, 6).unwrap();
        let parts = s.primary_decomposition();
        assert_eq!(parts.iter().map(|p| p.period()).collect::<Vec<_>>(), vec![2, 3]);
        let mut sum = vec![0u64; ctx.rank(2)];
        for part in &parts {
            let q = part.period();
            for (acc, c) in sum.iter_mut().zip(part.coordinates()) {
                *acc = (*acc + (6 / q) * c) % 6;
            }
        }
        assert_eq!(sum, s.coordinates());

        let p = BrauerClassSpec::new(&b, 4).unwrap().primary_decomposition();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].period(), 4);
    }

    #[test]
    fn p_poly_examples() {
        let s = obsdjp();
        let ctx = s.context().clone();
        let big_b = s.b_field();
        let theta = MultiVector::theta(&ctx);
        let a = vec![r(3, 1), r(5, 1), r(-1, 1), r(1, 2)];
        let coords = HodgeCoordinates::rank_one(4, 1, a.clone());
        let c: Vec<MultiVector> = (1..=4)
            .map(|j| MultiVector::theta_power_integral(&ctx, j).scaled(&a[j - 1]))
            .collect();
        let four = BigInt::from(4);
        assert_eq!(
            p_poly(&s, 1, &coords).unwrap(),
            big_b.scaled_int(&four) + c[0].clone()
        );
        assert_eq!(
            p_poly(&s, 2, &coords).unwrap(),
            big_b.power(2).scaled_int(&BigInt::from(6))
                + big_b.wedge(&c[0]).scaled_int(&BigInt::from(3))
                + c[1].clone()
        );
        assert_eq!(c[0], theta.scaled(&a[0]));

        let zero = BrauerClassSpec::new(&MultiVector::zero(&ctx), 2).unwrap();
        for i in 1..=4 {
            assert_eq!(p_poly(&zero, i, &coords).unwrap(), c[i - 1]);
        }
        let none = HodgeCoordinates::rank_one(0, 0, vec![r(0, 1); 4]);
        for i in 1..=4 {
            assert!(p_poly(&s, i, &none).unwrap().is_zero());
        }
        assert!(p_poly(&s, 5, &coords).unwrap().is_zero());
    }
}
