//! Symmetric functions: polynomials over `ℚ` and `ℤ/m`, conversion of
//! symmetric polynomials in formal roots to the elementary basis, the
//! reduced-power polynomials `Q_{p,i,j}`, and Newton's identities between
//! Chern classes and the Chern character.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::exterior::ModMultiVector;

/// Exponent vector; entry `k` is the exponent of variable `k` (0-based).
pub type Monomial = Vec<u32>;

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn weighted_degree(m: &[u32], weights: &[u32]) -> u32 {
    m.iter().zip(weights).map(|(e, w)| e * w).sum()
}

/// Polynomial with coefficients in `ℤ/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    modulus: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl ModPoly {
    pub fn zero(nvars: usize, modulus: u64) -> Self {
        Self {
            modulus,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, modulus: u64, c: u64) -> Self {
        let mut p = Self::zero(nvars, modulus);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, modulus: u64, k: usize) -> Self {
        let mut m = vec![0; nvars];
        m[k] = 1;
        let mut p = Self::zero(nvars, modulus);
        p.add_term(m, 1);
        p
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &[u32]) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let c = c % self.modulus;
        if c == 0 {
            return;
        }
        let q = self.modulus as u128;
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e = ((*e as u128 + c as u128) % q) as u64;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn scaled(&self, f: u64) -> Self {
        let q = self.modulus as u128;
        let mut out = Self::zero(self.nvars, self.modulus);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), ((*c as u128 * (f as u128 % q)) % q) as u64);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(self.modulus - 1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let q = self.modulus as u128;
        let mut out = Self::zero(self.nvars, self.modulus);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(mono_mul(a, b), ((*ca as u128 * *cb as u128) % q) as u64);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, self.modulus, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Terms of weighted degree exactly `deg`.
    pub fn homogeneous_part(&self, weights: &[u32], deg: u32) -> Self {
        Self {
            modulus: self.modulus,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| weighted_degree(m, weights) == deg)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    /// True if every term has weighted degree `deg`.
    pub fn is_weighted_homogeneous(&self, weights: &[u32], deg: u32) -> bool {
        self.terms.keys().all(|m| weighted_degree(m, weights) == deg)
    }

    /// Evaluates at commuting even-degree classes; `values[k]` is variable `k`.
    pub fn evaluate(&self, values: &[ModMultiVector]) -> Result<ModMultiVector> {
        let first = values
            .first()
            .ok_or_else(|| Error::InvalidArgument("no values supplied".into()))?;
        let (g, m) = (first.g(), first.modulus());
        if m % self.modulus != 0 && self.modulus % m != 0 {
            return Err(Error::InvalidArgument(format!(
                "modulus {m} incompatible with polynomial modulus {}",
                self.modulus
            )));
        }
        let modulus = m.min(self.modulus);
        let mut powers: HashMap<(usize, u32), ModMultiVector> = HashMap::new();
        let mut out = ModMultiVector::zero(g, modulus);
        for (mono, c) in &self.terms {
            let mut term = ModMultiVector::scalar(g, modulus, *c);
            for (k, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values.get(k).ok_or(Error::MissingResidue(k + 1))?;
                let pw = powers
                    .entry((k, e))
                    .or_insert_with(|| {
                        let base = v.reduce_to(modulus);
                        let mut acc = ModMultiVector::scalar(g, modulus, 1);
                        for _ in 0..e {
                            acc = acc.wedge(&base);
                        }
                        acc
                    })
                    .clone();
                term = term.wedge(&pw);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

/// `e_k(t_1, …, t_n)` over `ℤ/m`.
pub fn elementary(n: usize, k: usize, modulus: u64) -> ModPoly {
    let mut p = ModPoly::zero(n, modulus);
    if k > n {
        return p;
    }
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize == k {
            p.add_term((0..n).map(|i| (mask >> i & 1) as u32).collect(), 1);
        }
    }
    p
}

/// Rewrites a symmetric polynomial in `n` roots as a polynomial in
/// `e_1..e_n` (variable `k-1` is `e_k`) by peeling off leading monomials.
pub fn to_elementary_basis(f: &ModPoly) -> Result<ModPoly> {
    let n = f.nvars;
    let q = f.modulus;
    let es: Vec<ModPoly> = (1..=n).map(|k| elementary(n, k, q)).collect();
    let mut rest = f.clone();
    let mut out = ModPoly::zero(n, q);
    while let Some((lead, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), *c)) {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("polynomial is not symmetric".into()));
        }
        // t^α is the leading term of Π e_k^{α_k − α_{k+1}}.
        let exps: Monomial = (0..n)
            .map(|k| lead[k] - lead.get(k + 1).copied().unwrap_or(0))
            .collect();
        let mut prod = ModPoly::constant(n, q, c);
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                prod = prod.mul(&es[k].pow(e));
            }
        }
        rest = rest.sub(&prod);
        out.add_term(exps, c);
    }
    Ok(out)
}

/// `P^j(c_i) = Q_{p,i,j}(c_1, …, c_N)` with `N = i + j(p−1)`, over `ℤ/p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPowerPolynomial {
    pub p: u64,
    pub i: usize,
    pub j: usize,
    /// Variable `k-1` is `C_k`.
    pub poly: ModPoly,
}

impl ReducedPowerPolynomial {
    pub fn degree(&self) -> usize {
        self.i + self.j * (self.p as usize - 1)
    }

    /// Largest `k` such that `C_k` occurs.
    pub fn max_variable(&self) -> usize {
        self.poly
            .terms()
            .filter_map(|(m, _)| m.iter().rposition(|e| *e > 0))
            .max()
            .map_or(0, |k| k + 1)
    }

    pub fn is_weighted_homogeneous(&self) -> bool {
        let weights: Vec<u32> = (1..=self.poly.nvars() as u32).collect();
        self.poly
            .is_weighted_homogeneous(&weights, self.degree() as u32)
    }

    /// `classes[k-1] = C_k mod p`.
    pub fn evaluate(&self, classes: &[ModMultiVector]) -> Result<ModMultiVector> {
        let needed = self.max_variable();
        if classes.len() < needed {
            return Err(Error::MissingResidue(classes.len() + 1));
        }
        if self.poly.is_zero() {
            let g = classes.first().map_or(0, ModMultiVector::g);
            return Ok(ModMultiVector::zero(g, self.p));
        }
        self.poly.evaluate(classes)
    }
}

/// The degree-`(i + j(p−1))` part of `e_i(t + t^p)` in `roots` formal roots.
pub fn total_power_piece(p: u64, i: usize, j: usize, roots: usize) -> ModPoly {
    let mut f = ModPoly::zero(roots, p);
    if i > roots || j > i {
        return f;
    }
    for s in 0u64..(1u64 << roots) {
        if s.count_ones() as usize != i {
            continue;
        }
        // Each j-subset J of S contributes Π_{S∖J} t · Π_J t^p.
        let members: Vec<usize> = (0..roots).filter(|a| s >> a & 1 == 1).collect();
        for jm in 0u64..(1u64 << i) {
            if jm.count_ones() as usize != j {
                continue;
            }
            let mut mono = vec![0u32; roots];
            for (pos, &a) in members.iter().enumerate() {
                mono[a] = if jm >> pos & 1 == 1 { p as u32 } else { 1 };
            }
            f.add_term(mono, 1);
        }
    }
    f
}

/// `Q_{p,i,j}` by the splitting principle, for an odd prime `p`. Cached.
pub fn reduced_power_polynomial(p: u64, i: usize, j: usize) -> Result<Arc<ReducedPowerPolynomial>> {
    if p < 3 || !arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if i == 0 || j == 0 {
        return Err(Error::InvalidArgument("reduced powers need i, j >= 1".into()));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize, usize), Arc<ReducedPowerPolynomial>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(q) = cache.lock().expect("cache poisoned").get(&(p, i, j)) {
        return Ok(Arc::clone(q));
    }
    let n = i + j * (p as usize - 1);
    if n > 16 {
        return Err(Error::InvalidArgument(format!(
            "Q_{{{p},{i},{j}}} needs {n} formal roots; at most 16 supported"
        )));
    }
    let poly = to_elementary_basis(&total_power_piece(p, i, j, n))?;
    let q = Arc::new(ReducedPowerPolynomial { p, i, j, poly });
    cache
        .lock()
        .expect("cache poisoned")
        .insert((p, i, j), Arc::clone(&q));
    Ok(q)
}

/// Polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RatPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut m = vec![0; nvars];
        m[k] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, f: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * f);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(mono_mul(a, b), ca * cb);
            }
        }
        out
    }

    /// Substitutes `values[k]` for variable `k`.
    pub fn substitute(&self, values: &[RatPoly]) -> RatPoly {
        let nv = values.first().map_or(0, RatPoly::nvars);
        let mut out = RatPoly::zero(nv);
        for (m, c) in &self.terms {
            let mut term = RatPoly::constant(nv, c.clone());
            for (k, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&values[k]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Reduction mod `m`; fails unless every denominator is a unit mod `m`.
    pub fn to_mod(&self, modulus: u64) -> Result<ModPoly> {
        let mut out = ModPoly::zero(self.nvars, modulus);
        let m = BigInt::from(modulus);
        for (mono, c) in &self.terms {
            let num = arith::reduce_mod(c.numer(), modulus);
            let den = arith::reduce_mod(c.denom(), modulus);
            let inv = arith::mod_inverse(den as i128, modulus as i128).ok_or_else(|| {
                Error::InvalidArgument(format!("denominator {} not invertible mod {m}", c.denom()))
            })?;
            out.add_term(
                mono.clone(),
                ((num as u128 * inv as u128) % modulus as u128) as u64,
            );
        }
        Ok(out)
    }
}

/// Newton's identities up to degree `g`, in weighted variables.
///
/// With `c_k = e_k` of the Chern roots, the power sums are
/// `p_k = (−1)^{k−1} k e_k + Σ_{i<k} (−1)^{k−1+i} e_{k−i} p_i` and
/// `ch_k = p_k / k!`.
#[derive(Clone, Debug)]
pub struct NewtonTransform {
    g: usize,
    power_sums: Vec<RatPoly>,
    ch: Vec<RatPoly>,
    chern: Vec<RatPoly>,
}

impl NewtonTransform {
    pub fn new(g: usize) -> Self {
        let e = |k: usize| RatPoly::var(g, k - 1);
        let sign = |x: usize| {
            if x % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        };
        let mut power_sums: Vec<RatPoly> = Vec::with_capacity(g);
        for k in 1..=g {
            let mut pk = e(k).scaled(&(sign(k - 1) * BigRational::from_integer(k.into())));
            for i in 1..k {
                pk = pk.add(&e(k - i).mul(&power_sums[i - 1]).scaled(&sign(k - 1 + i)));
            }
            power_sums.push(pk);
        }
        let ch = power_sums
            .iter()
            .enumerate()
            .map(|(k, p)| {
                p.scaled(&BigRational::new(
                    BigInt::one(),
                    arith::factorial(k as u64 + 1),
                ))
            })
            .collect();
        // e_k = (1/k) Σ_{i=1}^k (−1)^{i−1} e_{k−i} p_i, with p_i = i!·ch_i.
        let mut chern: Vec<RatPoly> = Vec::with_capacity(g);
        for k in 1..=g {
            let mut acc = RatPoly::zero(g);
            for i in 1..=k {
                let p_i = RatPoly::var(g, i - 1)
                    .scaled(&BigRational::from_integer(arith::factorial(i as u64)));
                let e_rest = if i == k {
                    RatPoly::constant(g, BigRational::one())
                } else {
                    chern[k - i - 1].clone()
                };
                acc = acc.add(&e_rest.mul(&p_i).scaled(&sign(i - 1)));
            }
            chern.push(acc.scaled(&BigRational::new(BigInt::one(), BigInt::from(k))));
        }
        Self {
            g,
            power_sums,
            ch,
            chern,
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `p_k` in `c_1..c_g` (integer coefficients).
    pub fn power_sum(&self, k: usize) -> &RatPoly {
        &self.power_sums[k - 1]
    }

    /// `ch_k` in `c_1..c_g`.
    pub fn ch(&self, k: usize) -> &RatPoly {
        &self.ch[k - 1]
    }

    /// `c_k` in `ch_1..ch_g`.
    pub fn chern(&self, k: usize) -> &RatPoly {
        &self.chern[k - 1]
    }
}
