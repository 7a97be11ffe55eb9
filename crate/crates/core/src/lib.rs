//! Exact index obstructions for topologically trivial Brauer classes on very
//! general principally polarized complex abelian varieties.
//!
//! A class is given by an integral 2-form `b` and a period `n`, so that the
//! rational B-field is `B = b/n`. Everything here is exact: cohomology is
//! modelled as the exterior algebra over the integers with rational scalars,
//! and every integrality question is answered through Smith normal forms.
//!
//! The obstructions implemented are
//!
//! * the de Jong–Perry integrality obstruction ([`djp`]),
//! * the Steenrod / reduced-power refinement of it ([`refined`]),
//! * the two-stage Chern-character obstruction of Hotchkiss ([`hotchkiss`]),
//!
//! and [`driver`] combines them into index lower bounds, the closed-form
//! failure degree, and an indecomposability certifier.

pub mod abelian;
pub mod arith;
pub mod djp;
pub mod driver;
pub mod error;
pub mod exterior;
pub mod hotchkiss;
pub mod linalg;
pub mod refined;
pub mod symmetric;

pub use abelian::{BrauerClassSpec, HodgeBasis, HodgeCoordinates};
pub use error::{Error, Result};
pub use exterior::{AlgebraContext, ModMultiVector, MultiVector};
pub use linalg::{AffineLattice, IntMatrix, SmithDecomposition};
