//! The exterior algebra `Λ*ℤ^{2g} ≅ H*(X, ℤ)` of a complex abelian g-fold,
//! with exact rational scalars.
//!
//! Generators are numbered `1..=2g` with `2k-1 ↦ x_k` and `2k ↦ y_k`; a
//! basis k-form is the bit-set of its generators (bit `i-1` for generator
//! `i`), and each degree is enumerated in colexicographic order, which for
//! bit-sets of fixed popcount is plain numeric order.

mod modular;

pub use modular::ModMultiVector;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Largest supported dimension; the rank table has `4^g` entries.
pub const MAX_DIM: usize = 10;

/// Basis tables for `Λ*ℤ^{2g}`. Read-only once built.
#[derive(Debug)]
pub struct AlgebraContext {
    g: usize,
    basis: Vec<Vec<u32>>,
    rank: Vec<u32>,
    binomials: Vec<Vec<BigInt>>,
}

impl AlgebraContext {
    pub fn new(g: usize) -> Result<Arc<Self>> {
        if g == 0 || g > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "dimension g must lie in 1..={MAX_DIM}, got {g}"
            )));
        }
        let n = 2 * g;
        let mut basis = vec![Vec::new(); n + 1];
        let mut rank = vec![0u32; 1 << n];
        for blade in 0u32..(1u32 << n) {
            let k = blade.count_ones() as usize;
            rank[blade as usize] = basis[k].len() as u32;
            basis[k].push(blade);
        }
        let binomials = (0..=n as i64)
            .map(|a| (0..=a).map(|b| arith::binomial(a, b)).collect())
            .collect();
        Ok(Arc::new(Self {
            g,
            basis,
            rank,
            binomials,
        }))
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim_one_forms(&self) -> usize {
        2 * self.g
    }

    /// Rank of `Λ^k`, i.e. `C(2g, k)`; zero outside `0..=2g`.
    pub fn rank(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Vec::len)
    }

    /// `C(a, b)` for `0 <= b <= a <= 2g`.
    pub fn binomial(&self, a: usize, b: usize) -> &BigInt {
        &self.binomials[a][b]
    }

    /// Colex-ordered basis bit-sets of degree `k`.
    pub fn basis(&self, k: usize) -> &[u32] {
        self.basis.get(k).map_or(&[], Vec::as_slice)
    }

    /// Position of a bit-set within its degree.
    pub fn index_of(&self, blade: u32) -> usize {
        self.rank[blade as usize] as usize
    }

    /// Bit-set of the generator `x_k` (1-based `k`).
    pub fn x_bit(k: usize) -> u32 {
        1 << (2 * k - 2)
    }

    pub fn y_bit(k: usize) -> u32 {
        1 << (2 * k - 1)
    }

    fn check_same(&self, other: &AlgebraContext) -> Result<()> {
        if self.g != other.g {
            return Err(Error::ContextMismatch {
                left: self.g,
                right: other.g,
            });
        }
        Ok(())
    }
}

/// True when `a ∧ b` picks up a minus sign when sorted into `a | b`.
#[inline]
pub(crate) fn merge_sign_negative(a: u32, b: u32) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    inversions & 1 == 1
}

/// Renders a basis bit-set as e.g. `x1^y1^x3`.
pub fn blade_name(blade: u32) -> String {
    if blade == 0 {
        return "1".into();
    }
    let mut s = String::new();
    let mut rest = blade;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        if !s.is_empty() {
            s.push('^');
        }
        s.push(if i % 2 == 0 { 'x' } else { 'y' });
        s.push_str(&(i / 2 + 1).to_string());
        rest &= rest - 1;
    }
    s
}

/// An element of `Λ*ℚ^{2g}`, stored sparsely; zero coefficients are never kept.
#[derive(Clone)]
pub struct MultiVector {
    ctx: Arc<AlgebraContext>,
    terms: BTreeMap<u32, BigRational>,
}

impl PartialEq for MultiVector {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.g == other.ctx.g && self.terms == other.terms
    }
}

impl Eq for MultiVector {}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiVector(g={}, {})", self.ctx.g, self)
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (blade, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "{}", blade_name(*blade))?;
        }
        Ok(())
    }
}

/// Panics on a context mismatch, like [`MultiVector::wedge`].
impl std::ops::Add for MultiVector {
    type Output = MultiVector;

    fn add(mut self, other: MultiVector) -> MultiVector {
        self.ctx.check_same(&other.ctx).expect("sum across different algebras");
        for (b, c) in other.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl std::ops::Sub for MultiVector {
    type Output = MultiVector;

    fn sub(self, other: MultiVector) -> MultiVector {
        self + other.neg()
    }
}

impl MultiVector {
    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ctx: &Arc<AlgebraContext>, value: BigRational) -> Self {
        Self::from_blade(ctx, 0, value)
    }

    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        Self::scalar(ctx, BigRational::one())
    }

    pub fn from_blade(ctx: &Arc<AlgebraContext>, blade: u32, coeff: BigRational) -> Self {
        let mut v = Self::zero(ctx);
        assert!(
            (blade as usize) < ctx.rank.len(),
            "blade {blade:#b} outside Λ*ℤ^{}",
            2 * ctx.g
        );
        if !coeff.is_zero() {
            v.terms.insert(blade, coeff);
        }
        v
    }

    /// Degree-`k` class from colex coordinates.
    pub fn from_coordinates(
        ctx: &Arc<AlgebraContext>,
        k: usize,
        coords: &[BigRational],
    ) -> Result<Self> {
        if coords.len() != ctx.rank(k) {
            return Err(Error::DimensionMismatch {
                expected: ctx.rank(k),
                actual: coords.len(),
            });
        }
        let mut v = Self::zero(ctx);
        for (blade, c) in ctx.basis(k).iter().zip(coords) {
            if !c.is_zero() {
                v.terms.insert(*blade, c.clone());
            }
        }
        Ok(v)
    }

    /// The 1-form with 1-based index `i` (`2k-1 ↦ x_k`, `2k ↦ y_k`).
    pub fn generator(ctx: &Arc<AlgebraContext>, i: usize) -> Self {
        assert!((1..=ctx.dim_one_forms()).contains(&i), "generator {i} out of range");
        Self::from_blade(ctx, 1 << (i - 1), BigRational::one())
    }

    pub fn x(ctx: &Arc<AlgebraContext>, k: usize) -> Self {
        Self::generator(ctx, 2 * k - 1)
    }

    pub fn y(ctx: &Arc<AlgebraContext>, k: usize) -> Self {
        Self::generator(ctx, 2 * k)
    }

    /// `ω_k = x_k ∧ y_k`.
    pub fn omega(ctx: &Arc<AlgebraContext>, k: usize) -> Self {
        Self::from_blade(
            ctx,
            AlgebraContext::x_bit(k) | AlgebraContext::y_bit(k),
            BigRational::one(),
        )
    }

    /// The principal polarization `θ = Σ x_k ∧ y_k`.
    pub fn theta(ctx: &Arc<AlgebraContext>) -> Self {
        let mut v = Self::zero(ctx);
        for k in 1..=ctx.g {
            v.terms.insert(
                AlgebraContext::x_bit(k) | AlgebraContext::y_bit(k),
                BigRational::one(),
            );
        }
        v
    }

    /// `θ^k / k!`, the integral generator of the Hodge classes in degree `2k`:
    /// the sum of all `ω_{i_1} ∧ ... ∧ ω_{i_k}` with `i_1 < ... < i_k`.
    /// Zero for `k > g`.
    pub fn theta_power_integral(ctx: &Arc<AlgebraContext>, k: usize) -> Self {
        let mut v = Self::zero(ctx);
        if k > ctx.g {
            return v;
        }
        // k-subsets of {1..g}, expanded into paired bits.
        for mask in 0u32..(1u32 << ctx.g) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut blade = 0u32;
            for i in 0..ctx.g {
                if mask >> i & 1 == 1 {
                    blade |= 0b11 << (2 * i);
                }
            }
            v.terms.insert(blade, BigRational::one());
        }
        v
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: u32) -> BigRational {
        self.terms.get(&blade).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if the class is nonzero and homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| b.count_ones() as usize);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Projection onto `Λ^k`.
    pub fn grade(&self, k: usize) -> Self {
        Self {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.count_ones() as usize == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    fn add_term(&mut self, blade: u32, coeff: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(blade) {
            Entry::Vacant(e) => {
                if !coeff.is_zero() {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-BigRational::one())
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.ctx);
        }
        Self {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, c * factor))
                .collect(),
        }
    }

    pub fn scaled_int(&self, factor: &BigInt) -> Self {
        self.scaled(&BigRational::from_integer(factor.clone()))
    }

    /// Wedge product. Signs come from sorting the concatenated bit-sets.
    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let prod = ca * cb;
                let prod = if merge_sign_negative(*a, *b) { -prod } else { prod };
                out.add_term(a | b, prod);
            }
        }
        Ok(out)
    }

    /// Wedge product; panics on a context mismatch. See [`Self::try_wedge`].
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge across different algebras")
    }

    /// `e`-fold wedge power; `power(0)` is the unit.
    pub fn power(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.wedge(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.wedge(&base);
            }
        }
        acc
    }

    /// Colex coordinates in degree `k`.
    pub fn coordinates(&self, k: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.ctx.rank(k)];
        for (b, c) in &self.terms {
            if b.count_ones() as usize == k {
                out[self.ctx.index_of(*b)] = c.clone();
            }
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(arith::is_integer)
    }

    /// Coefficient-wise reduction of an integral class.
    pub fn reduce_mod(&self, modulus: u64) -> Result<ModMultiVector> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let mut out = ModMultiVector::zero(self.ctx.g, modulus);
        for (b, c) in &self.terms {
            out.add_term(*b, arith::reduce_mod(c.numer(), modulus));
        }
        Ok(out)
    }

    /// Lifts residues into `[0, m)` integers.
    pub fn from_mod(ctx: &Arc<AlgebraContext>, v: &ModMultiVector) -> Self {
        let mut out = Self::zero(ctx);
        for (b, c) in v.terms() {
            out.terms
                .insert(b, BigRational::from_integer(BigInt::from(c)));
        }
        out
    }

    /// Integer coefficients, if integral.
    pub fn integer_terms(&self) -> Option<Vec<(u32, BigInt)>> {
        self.terms
            .iter()
            .map(|(b, c)| arith::is_integer(c).then(|| (*b, c.numer().clone())))
            .collect()
    }
}
