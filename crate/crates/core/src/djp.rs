//! The de Jong–Perry integrality obstruction at a fixed degree `d`.
//!
//! If `ind(α) | d` there are rational Hodge classes `c_1..c_m`,
//! `m = min(d, g)`, making every `p_i^{B,d}(c₀, c₁, …, c_i)` integral. All
//! degrees share the unknowns, so they are stacked into one system and
//! solved at once.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::{BrauerClassSpec, HodgeBasis};
use crate::arith;
use crate::error::{Error, Result};
use crate::exterior::MultiVector;
use crate::linalg::{solve_integrality, AffineLattice, AffineMap};

/// One cohomological degree `2i` of the stacked system: the coordinates of
/// `p_i` are `constant + linear · a`.
#[derive(Clone, Debug)]
pub struct DegreeBlock {
    pub i: usize,
    pub linear: Vec<Vec<BigRational>>,
    pub constant: Vec<BigRational>,
}

/// The full integrality system; columns are the Hodge coordinates `a_j`
/// (one per generator of degree `2j`, `j = 1..=depth`).
#[derive(Clone, Debug)]
pub struct IntegralitySystem {
    pub d: u64,
    pub depth: usize,
    /// `(j, generator index)` for each column.
    pub columns: Vec<(usize, usize)>,
    pub blocks: Vec<DegreeBlock>,
}

impl IntegralitySystem {
    /// Builds the system for an arbitrary rational B-field.
    ///
    /// `depth` is the number of degrees (and of unknown classes) involved;
    /// the de Jong–Perry system uses `min(d, g)`.
    pub fn build(
        field: &MultiVector,
        basis: &HodgeBasis,
        d: u64,
        c0: &BigInt,
        depth: usize,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("degree d must be positive".into()));
        }
        let ctx = field.context();
        if depth > ctx.g() {
            return Err(Error::InvalidArgument(format!(
                "depth {depth} exceeds dimension {}",
                ctx.g()
            )));
        }
        let powers: Vec<MultiVector> = {
            let mut v = vec![MultiVector::one(ctx)];
            for k in 1..=depth {
                let next = v[k - 1].wedge(field);
                v.push(next);
            }
            v
        };
        let columns: Vec<(usize, usize)> = (1..=depth)
            .flat_map(|j| (0..basis.degree(j).len()).map(move |t| (j, t)))
            .collect();
        let d = d as i64;
        let blocks = (1..=depth)
            .map(|i| {
                let constant_class =
                    powers[i].scaled_int(&(arith::binomial(d, i as i64) * c0));
                let cols: Vec<Vec<BigRational>> = columns
                    .iter()
                    .map(|&(j, t)| {
                        if j > i {
                            return vec![BigRational::zero(); ctx.rank(2 * i)];
                        }
                        let coeff = arith::binomial(d - j as i64, (i - j) as i64);
                        if coeff.is_zero() {
                            return vec![BigRational::zero(); ctx.rank(2 * i)];
                        }
                        powers[i - j]
                            .wedge(&basis.degree(j)[t])
                            .scaled_int(&coeff)
                            .coordinates(2 * i)
                    })
                    .collect();
                let rows = ctx.rank(2 * i);
                let linear = (0..rows)
                    .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                    .collect();
                DegreeBlock {
                    i,
                    linear,
                    constant: constant_class.coordinates(2 * i),
                }
            })
            .collect();
        Ok(Self {
            d: d as u64,
            depth,
            columns,
            blocks,
        })
    }

    /// The stacked `(P, w)`: rows of all degrees, in increasing degree.
    pub fn stacked(&self) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let p = self.blocks.iter().flat_map(|b| b.linear.iter().cloned()).collect();
        let w = self.blocks.iter().flat_map(|b| b.constant.iter().cloned()).collect();
        (p, w)
    }

    pub fn num_rows(&self) -> usize {
        self.blocks.iter().map(|b| b.constant.len()).sum()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn solve(&self) -> Result<Option<AffineLattice>> {
        let (p, w) = self.stacked();
        solve_integrality(&p, &w, self.num_columns())
    }

    /// `a ↦ coordinates of p_i`, one map per degree.
    pub fn class_maps(&self) -> Vec<AffineMap> {
        self.blocks
            .iter()
            .map(|b| AffineMap {
                constant: b.constant.clone(),
                linear: b.linear.clone(),
            })
            .collect()
    }
}

/// `(P, w)` for the very general abelian variety with `B = b/n`.
pub fn build_system(spec: &BrauerClassSpec, d: u64, c0: i64) -> Result<IntegralitySystem> {
    let basis = HodgeBasis::very_general(spec.context());
    let depth = (d.min(spec.g() as u64)) as usize;
    IntegralitySystem::build(&spec.b_field(), &basis, d, &BigInt::from(c0), depth)
}

/// Every choice of Hodge coordinates making `p_1..p_m` integral, or `None`.
pub fn djp_solution_family(
    spec: &BrauerClassSpec,
    d: u64,
    c0: i64,
) -> Result<Option<AffineLattice>> {
    build_system(spec, d, c0)?.solve()
}

/// True iff no Hodge classes exist at degree `d` (so `ind(α) ∤ d`), with `c₀ = 1`.
pub fn djp_obstructed(spec: &BrauerClassSpec, d: u64) -> Result<bool> {
    Ok(djp_solution_family(spec, d, 1)?.is_none())
}

/// True iff the all-zero choice `c_j = 0` already works, i.e. every
/// `C(d, i)·B^i` is integral.
pub fn zero_point_admissible(spec: &BrauerClassSpec, d: u64) -> Result<bool> {
    let sys = build_system(spec, d, 1)?;
    Ok(sys
        .blocks
        .iter()
        .all(|b| b.constant.iter().all(arith::is_integer)))
}
