//! The two-stage Chern-character obstruction, for abelian varieties, where
//! `ch` of a topological K-theory class is exactly an integral class.
//!
//! Stage 1 asks for Hodge classes `Q_1..Q_g` making every
//! `c_k(v) = p_k^{−B,d}(Q_1, …, Q_k)` integral; it is the DJP system for
//! `−B` carried through all `g` degrees. Stage 2 asks that for some point
//! of that family every `ch_k(v)` be integral.
//!
//! `k!·ch_k = P_k(c_1, …, c_k)` with `P_k` the integral Newton polynomial,
//! so integrality of `ch_k` is `P_k(c(u)) ≡ 0 (mod ℓ^{v_ℓ(k!)})` for each
//! prime `ℓ ≤ k`. Each condition depends only on `u mod ℓ^{v_ℓ(k!)}`, and
//! different primes are independent by CRT, so stage 2 runs one ℓ-adic
//! search per prime, lifting surviving residues one digit at a time.

use num_bigint::BigInt;
use serde::Serialize;

use crate::abelian::{BrauerClassSpec, HodgeBasis};
use crate::arith;
use crate::djp::IntegralitySystem;
use crate::error::{Error, Result};
use crate::exterior::ModMultiVector;
use crate::linalg::{for_each_residue, AffineLattice, IntegralAffineMap};
use crate::symmetric::{ModPoly, NewtonTransform};

/// Default cap on stage-2 evaluations per (class, degree).
pub const DEFAULT_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HotchkissOutcome {
    /// No Hodge classes make every `c_k(v)` integral.
    FirstStage,
    /// No point of the stage-1 family has integral Chern character; the
    /// ℓ-adic search for `prime` died out at `level`.
    SecondStage { prime: u64, level: u32 },
    /// For every prime, a residue with integral `ch` (joined by CRT).
    NotObstructed { witnesses: Vec<(u64, Vec<u64>)> },
    /// The search exceeded its budget; no verdict.
    Inconclusive { evaluated: u64, budget: u64 },
}

impl HotchkissOutcome {
    pub fn obstructed(&self) -> Option<bool> {
        match self {
            Self::FirstStage | Self::SecondStage { .. } => Some(true),
            Self::NotObstructed { .. } => Some(false),
            Self::Inconclusive { .. } => None,
        }
    }
}

/// Stage-1 system: `−B`, `c₀ = 1`, all degrees `1..=g`.
pub fn first_stage_system(spec: &BrauerClassSpec, d: u64) -> Result<IntegralitySystem> {
    let basis = HodgeBasis::very_general(spec.context());
    IntegralitySystem::build(
        &spec.b_field().neg(),
        &basis,
        d,
        &BigInt::from(1),
        spec.g(),
    )
}

pub fn hotchkiss_first_stage(spec: &BrauerClassSpec, d: u64) -> Result<Option<AffineLattice>> {
    first_stage_system(spec, d)?.solve()
}

/// Stage 2 over a nonempty stage-1 family.
pub fn hotchkiss_second_stage(
    spec: &BrauerClassSpec,
    system: &IntegralitySystem,
    family: &AffineLattice,
    budget: u64,
) -> Result<HotchkissOutcome> {
    let g = spec.g();
    let ctx = spec.context();
    let maps: Vec<IntegralAffineMap> = system
        .class_maps()
        .iter()
        .map(|m| m.restrict(family))
        .collect::<Result<_>>()?;
    let blades: Vec<Vec<u32>> = (1..=g).map(|k| ctx.basis(2 * k).to_vec()).collect();
    let newton = NewtonTransform::new(g);
    let t = family.basis().len();
    let mut evaluated = 0u64;
    let mut witnesses = Vec::new();

    for ell in arith::primes_up_to(g as u64) {
        let needs: Vec<u32> = (1..=g)
            .map(|k| arith::valuation(&arith::factorial(k as u64), ell))
            .collect();
        let top = *needs.iter().max().expect("g >= 1");
        let modulus = arith::pow_u64(ell, top)
            .filter(|m| *m < 1 << 62)
            .ok_or_else(|| Error::Overflow(format!("{ell}^{top}")))?;
        let polys: Vec<ModPoly> = (1..=g)
            .map(|k| newton.power_sum(k).to_mod(modulus))
            .collect::<Result<_>>()?;

        // survivors hold u mod ℓ^level.
        let mut survivors: Vec<Vec<u64>> = vec![vec![0; t]];
        let mut step = 1u64;
        for level in 1..=top {
            let m = step * ell;
            let mut next = Vec::new();
            for base in &survivors {
                let mut over = false;
                for_each_residue(t, ell, |delta| {
                    evaluated += 1;
                    if evaluated > budget {
                        over = true;
                        return false;
                    }
                    let u: Vec<u64> = base.iter().zip(delta).map(|(b, d)| b + step * d).collect();
                    if passes(&maps, &blades, &polys, &needs, g, &u, m, level) {
                        next.push(u);
                    }
                    true
                });
                if over {
                    return Ok(HotchkissOutcome::Inconclusive { evaluated, budget });
                }
            }
            if next.is_empty() {
                return Ok(HotchkissOutcome::SecondStage { prime: ell, level });
            }
            survivors = next;
            step = m;
        }
        witnesses.push((ell, survivors.swap_remove(0)));
    }
    Ok(HotchkissOutcome::NotObstructed { witnesses })
}

/// Checks the conditions that first bind at `level`: `P_k(c(u)) ≡ 0 mod ℓ^level`
/// for the `k` with `v_ℓ(k!) >= level`.
#[allow(clippy::too_many_arguments)]
fn passes(
    maps: &[IntegralAffineMap],
    blades: &[Vec<u32>],
    polys: &[ModPoly],
    needs: &[u32],
    g: usize,
    u: &[u64],
    m: u64,
    level: u32,
) -> bool {
    let binding: Vec<usize> = (0..needs.len()).filter(|&k| needs[k] >= level).collect();
    if binding.is_empty() {
        return true;
    }
    let top_k = binding.iter().max().copied().unwrap_or(0);
    let classes: Vec<ModMultiVector> = maps
        .iter()
        .zip(blades)
        .take(top_k + 1)
        .map(|(map, blades)| {
            let mut v = ModMultiVector::zero(g, m);
            for (blade, c) in blades.iter().zip(map.evaluate_mod(u, m)) {
                v.add_term(*blade, c);
            }
            v
        })
        .collect();
    binding.iter().all(|&k| {
        let value = polys[k]
            .evaluate(&classes)
            .expect("power sums only use c_1..c_k");
        value.reduce_to(m).is_zero()
    })
}

/// Both stages at degree `d`.
pub fn hotchkiss_check(spec: &BrauerClassSpec, d: u64, budget: u64) -> Result<HotchkissOutcome> {
    let system = first_stage_system(spec, d)?;
    match system.solve()? {
        None => Ok(HotchkissOutcome::FirstStage),
        Some(family) => hotchkiss_second_stage(spec, &system, &family, budget),
    }
}
