//! Exact integer and rational linear algebra.

mod lattice;
mod matrix;
mod smith;

pub use lattice::{
    for_each_residue, residue_points, solve_integrality, AffineLattice, AffineMap,
    IntegralAffineMap, ResiduePoint,
};
pub use matrix::IntMatrix;
pub use smith::{smith, SmithDecomposition};
