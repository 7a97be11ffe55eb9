//! The refined obstruction: the integral classes `C_i = p_i^{B,d}(1, c_1, …)`
//! are Chern classes of a topological K-theory class, so their reductions
//! satisfy the universal Steenrod (p = 2) and reduced-power (odd p)
//! relations. On an abelian variety every positive-degree operation
//! vanishes, so each relation reads `0 ≡ RHS(C)`.
//!
//! The DJP family is an affine lattice and each `C_i` is affine in its
//! parameters, so `C_i mod p` only depends on the parameters mod p and the
//! search is finite.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::abelian::BrauerClassSpec;
use crate::arith;
use crate::djp::{build_system, IntegralitySystem};
use crate::error::{Error, Result};
use crate::exterior::ModMultiVector;
use crate::linalg::{residue_points, AffineLattice, ResiduePoint};
use crate::symmetric::{reduced_power_polynomial, ReducedPowerPolynomial};

/// `Sq^{2l}(C_i) = Σ_{k=0}^{l} C(i−l+k−1, k)·C_{l−k}·C_{i+k}` mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteenrodRelation {
    pub i: usize,
    pub l: usize,
    /// Pairs `(a, b)` with odd coefficient, meaning `C_a·C_b`.
    pub terms: Vec<(usize, usize)>,
}

impl SteenrodRelation {
    pub fn new(i: usize, l: usize) -> Self {
        let terms = (0..=l)
            .filter(|&k| {
                let c = arith::binomial(i as i64 - l as i64 + k as i64 - 1, k as i64);
                arith::reduce_mod(&c, 2) == 1
            })
            .map(|k| (l - k, i + k))
            .collect();
        Self { i, l, terms }
    }

    pub fn target_degree(&self) -> usize {
        self.i + self.l
    }

    /// Largest `C` index referenced.
    pub fn max_index(&self) -> usize {
        self.terms.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0)
    }

    pub fn label(&self) -> String {
        format!("Sq^{}(C_{})", 2 * self.l, self.i)
    }

    /// `residues[k] = C_k mod 2`, including `C_0`.
    pub fn rhs(&self, residues: &[ModMultiVector]) -> Result<ModMultiVector> {
        let first = residues.first().ok_or(Error::MissingResidue(0))?;
        let mut out = ModMultiVector::zero(first.g(), 2);
        for &(a, b) in &self.terms {
            let ca = residues.get(a).ok_or(Error::MissingResidue(a))?;
            let cb = residues.get(b).ok_or(Error::MissingResidue(b))?;
            out = out.add(&ca.reduce_to(2).wedge(&cb.reduce_to(2)));
        }
        Ok(out)
    }
}

/// Evaluates the right side of the `(i, l)` relation; `l = 0` gives `C_0·C_i`.
pub fn steenrod_rhs(i: usize, l: usize, residues: &[ModMultiVector]) -> Result<ModMultiVector> {
    SteenrodRelation::new(i, l).rhs(residues)
}

/// One constraint `0 ≡ RHS(C) (mod p)`.
#[derive(Clone, Debug)]
pub enum Relation {
    Steenrod(SteenrodRelation),
    ReducedPower(Arc<ReducedPowerPolynomial>),
}

impl Relation {
    pub fn prime(&self) -> u64 {
        match self {
            Relation::Steenrod(_) => 2,
            Relation::ReducedPower(q) => q.p,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Relation::Steenrod(r) => r.label(),
            Relation::ReducedPower(q) => format!("P^{}(C_{}) mod {}", q.j, q.i, q.p),
        }
    }

    pub fn max_index(&self) -> usize {
        match self {
            Relation::Steenrod(r) => r.max_index(),
            Relation::ReducedPower(q) => q.max_variable(),
        }
    }

    /// `residues[k] = C_k mod p`, including `C_0`.
    pub fn rhs(&self, residues: &[ModMultiVector]) -> Result<ModMultiVector> {
        match self {
            Relation::Steenrod(r) => r.rhs(residues),
            Relation::ReducedPower(q) => q.evaluate(&residues[1..]),
        }
    }
}

/// Relations on a g-fold with target in nonzero cohomology, split into
/// those usable with `C_0..C_m` and those referencing some `C_k`, `k > m`.
/// Relations with `l > i` (resp. `j > i`) are omitted: instability makes
/// them identically zero.
pub fn relations(p: u64, g: usize, m: usize) -> Result<(Vec<Relation>, Vec<Relation>)> {
    let mut all = Vec::new();
    if p == 2 {
        for s in 2..=g {
            for i in (1..s).rev() {
                let l = s - i;
                if l <= i {
                    all.push(Relation::Steenrod(SteenrodRelation::new(i, l)));
                }
            }
        }
    } else {
        let step = p as usize - 1;
        for s in 1..=g {
            for j in 1..=s / step {
                let i = s - j * step;
                if i >= j {
                    all.push(Relation::ReducedPower(reduced_power_polynomial(p, i, j)?));
                }
            }
        }
    }
    Ok(all.into_iter().partition(|r| r.max_index() <= m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub params: Vec<u64>,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Survivor {
    pub prime: u64,
    pub params: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefinedCertificate {
    /// The DJP family itself is empty.
    EmptyFamily,
    /// Every residue of the family mod `prime` violates a relation.
    AllResiduesViolate {
        prime: u64,
        violations: Vec<Violation>,
    },
    /// For each prime, a residue satisfying every applicable relation.
    Survivors { survivors: Vec<Survivor> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedOutcome {
    pub obstructed: bool,
    pub certificate: RefinedCertificate,
    /// Relations skipped because they reference `C_k` with `k > m`.
    pub skipped: Vec<String>,
}

/// `C_0, C_1, …, C_m` mod `p` at one residue point.
/// `blades[i-1]` is the colex basis of degree `2i`.
pub fn residue_classes(
    g: usize,
    blades: &[Vec<u32>],
    point: &ResiduePoint,
    c0: u64,
    p: u64,
) -> Vec<ModMultiVector> {
    let mut out = vec![ModMultiVector::scalar(g, p, c0)];
    for (values, blades) in point.values.iter().zip(blades) {
        let mut v = ModMultiVector::zero(g, p);
        for (blade, c) in blades.iter().zip(values) {
            v.add_term(*blade, *c);
        }
        out.push(v);
    }
    out
}

/// Checks every residue of `family` mod `p` against the relations.
pub fn check_prime(
    spec: &BrauerClassSpec,
    system: &IntegralitySystem,
    family: &AffineLattice,
    p: u64,
) -> Result<(std::result::Result<Vec<Violation>, Vec<u64>>, Vec<String>)> {
    let ctx = spec.context();
    let (usable, skipped) = relations(p, spec.g(), system.depth)?;
    let skipped: Vec<String> = skipped.iter().map(Relation::label).collect();
    let points = residue_points(family, &system.class_maps(), p)?;
    let blades: Vec<Vec<u32>> = system
        .blocks
        .iter()
        .map(|b| ctx.basis(2 * b.i).to_vec())
        .collect();
    let mut violations = Vec::with_capacity(points.len());
    for point in &points {
        let residues = residue_classes(spec.g(), &blades, point, 1, p);
        let mut violated = None;
        for rel in &usable {
            if !rel.rhs(&residues)?.is_zero() {
                violated = Some(rel.label());
                break;
            }
        }
        match violated {
            Some(relation) => violations.push(Violation {
                params: point.params.clone(),
                relation,
            }),
            None => return Ok((Err(point.params.clone()), skipped)),
        }
    }
    Ok((Ok(violations), skipped))
}

/// The refined obstruction at degree `d`.
///
/// Obstructed iff the DJP family is empty, or for some listed prime every
/// residue of the family violates an applicable relation (the residues for
/// different primes are independent by CRT, so one prime suffices).
pub fn refined_obstructed(
    spec: &BrauerClassSpec,
    d: u64,
    primes: &[u64],
    c0: i64,
) -> Result<RefinedOutcome> {
    if BigInt::from(c0) != BigInt::one() {
        return Err(Error::NonUnitC0(c0.to_string()));
    }
    for &p in primes {
        if !arith::is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
    }
    let system = build_system(spec, d, c0)?;
    let Some(family) = system.solve()? else {
        return Ok(RefinedOutcome {
            obstructed: true,
            certificate: RefinedCertificate::EmptyFamily,
            skipped: Vec::new(),
        });
    };
    let mut survivors = Vec::new();
    let mut skipped_all = Vec::new();
    for &p in primes {
        let (result, skipped) = check_prime(spec, &system, &family, p)?;
        if !skipped.is_empty() {
            log::debug!("d={d}, p={p}: skipped {skipped:?}");
        }
        skipped_all.extend(skipped);
        match result {
            Ok(violations) => {
                return Ok(RefinedOutcome {
                    obstructed: true,
                    certificate: RefinedCertificate::AllResiduesViolate {
                        prime: p,
                        violations,
                    },
                    skipped: skipped_all,
                })
            }
            Err(params) => survivors.push(Survivor { prime: p, params }),
        }
    }
    Ok(RefinedOutcome {
        obstructed: false,
        certificate: RefinedCertificate::Survivors { survivors },
        skipped: skipped_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{AlgebraContext, MultiVector};

    fn xy(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> MultiVector {
        MultiVector::x(ctx, i).wedge(&MultiVector::y(ctx, j))
    }

    fn obsdjp() -> BrauerClassSpec {
        let ctx = AlgebraContext::new(4).unwrap();
        let b = xy(&ctx, 1, 1) + xy(&ctx, 1, 3) + xy(&ctx, 2, 2) + xy(&ctx, 3, 1);
        BrauerClassSpec::new(&b, 2).unwrap()
    }

    #[test]
    fn relation_shapes() {
        assert_eq!(SteenrodRelation::new(2, 1).terms, vec![(1, 2), (0, 3)]);
        assert_eq!(SteenrodRelation::new(1, 1).terms, vec![(1, 1)]);
        assert_eq!(SteenrodRelation::new(3, 0).terms, vec![(0, 3)]);
        let (usable, skipped) = relations(2, 4, 4).unwrap();
        let labels: Vec<String> = usable.iter().map(Relation::label).collect();
        assert_eq!(labels, ["Sq^2(C_1)", "Sq^2(C_2)", "Sq^2(C_3)", "Sq^4(C_2)"]);
        assert!(skipped.is_empty());
        // Sq^4(C_2) = C_2² only needs C_2.
        let (usable, skipped) = relations(2, 4, 2).unwrap();
        assert_eq!(usable.len(), 2);
        assert_eq!(skipped.len(), 2);
    }

    #[test]
    fn example_is_refined_obstructed() {
        let out = refined_obstructed(&obsdjp(), 4, &[2], 1).unwrap();
        assert!(out.obstructed);
        let RefinedCertificate::AllResiduesViolate { prime, violations } = out.certificate else {
            panic!("expected residue certificate");
        };
        assert_eq!(prime, 2);
        assert!(!violations.is_empty());
        assert!(violations.iter().all(|v| v.relation == "Sq^2(C_2)"));
    }

    #[test]
    fn zero_field_survives() {
        let ctx = AlgebraContext::new(3).unwrap();
        let zero = BrauerClassSpec::new(&MultiVector::zero(&ctx), 2).unwrap();
        for d in 1..5 {
            let out = refined_obstructed(&zero, d, &[2, 3], 1).unwrap();
            assert!(!out.obstructed);
        }
        assert_eq!(
            refined_obstructed(&zero, 2, &[2], 2),
            Err(Error::NonUnitC0("2".into()))
        );
    }

    #[test]
    fn rhs_missing_residue() {
        let r = vec![ModMultiVector::scalar(2, 2, 1), ModMultiVector::zero(2, 2)];
        assert_eq!(steenrod_rhs(2, 1, &r), Err(Error::MissingResidue(2)));
        let c = ModMultiVector::scalar(2, 2, 1);
        let r = vec![c.clone(), c.clone(), c.clone()];
        assert_eq!(steenrod_rhs(2, 0, &r).unwrap(), c);
    }
}
