use std::collections::BTreeMap;
use std::fmt;

use super::{blade_name, merge_sign_negative};

/// An element of `Λ*(ℤ/m)^{2g}`; the reduction of integral classes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMultiVector {
    g: usize,
    modulus: u64,
    terms: BTreeMap<u32, u64>,
}

impl fmt::Debug for ModMultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[mod {}] ", self.modulus)?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| {
                if *c == 1 {
                    blade_name(*b)
                } else {
                    format!("{c}*{}", blade_name(*b))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl ModMultiVector {
    pub fn zero(g: usize, modulus: u64) -> Self {
        assert!(modulus >= 1);
        Self {
            g,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(g: usize, modulus: u64, value: u64) -> Self {
        let mut v = Self::zero(g, modulus);
        v.add_term(0, value);
        v
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    pub fn coefficient(&self, blade: u32) -> u64 {
        self.terms.get(&blade).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, blade: u32, coeff: u64) {
        let m = self.modulus;
        let c = coeff % m;
        if c == 0 {
            return;
        }
        let e = self.terms.entry(blade).or_insert(0);
        *e = ((*e as u128 + c as u128) % m as u128) as u64;
        if *e == 0 {
            self.terms.remove(&blade);
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.g, other.g, "mod classes over different algebras");
        assert_eq!(self.modulus, other.modulus, "mod classes with different moduli");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, *c);
        }
        out
    }

    pub fn scaled(&self, factor: u64) -> Self {
        let mut out = Self::zero(self.g, self.modulus);
        let m = self.modulus as u128;
        for (b, c) in &self.terms {
            out.add_term(*b, ((*c as u128 * (factor as u128 % m)) % m) as u64);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(self.modulus - 1)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.check(other);
        let m = self.modulus as u128;
        let mut out = Self::zero(self.g, self.modulus);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let mut prod = (*ca as u128 * *cb as u128) % m;
                if merge_sign_negative(*a, *b) && prod != 0 {
                    prod = m - prod;
                }
                out.add_term(a | b, prod as u64);
            }
        }
        out
    }

    /// Reduction to a coarser modulus dividing the current one.
    pub fn reduce_to(&self, modulus: u64) -> Self {
        assert!(self.modulus % modulus == 0, "{modulus} does not divide {}", self.modulus);
        let mut out = Self::zero(self.g, modulus);
        for (b, c) in &self.terms {
            out.add_term(*b, *c);
        }
        out
    }

    /// True if every coefficient is divisible by `divisor`.
    pub fn divisible_by(&self, divisor: u64) -> bool {
        self.terms.values().all(|c| c % divisor == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_survive_odd_moduli() {
        let x = {
            let mut v = ModMultiVector::zero(1, 3);
            v.add_term(0b01, 1);
            v
        };
        let y = {
            let mut v = ModMultiVector::zero(1, 3);
            v.add_term(0b10, 1);
            v
        };
        assert_eq!(x.wedge(&y).coefficient(0b11), 1);
        assert_eq!(y.wedge(&x).coefficient(0b11), 2);
        assert!(x.wedge(&x).is_zero());
        assert_eq!(x.add(&x.neg()), ModMultiVector::zero(1, 3));
    }
}
