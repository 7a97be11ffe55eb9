use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("exterior algebras of different dimension: g={left} vs g={right}")]
    ContextMismatch { left: usize, right: usize },

    #[error("class is not integral")]
    NotIntegral,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("2-form expected, got a class of degree {0}")]
    NotTwoForm(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("residue map is not integral on the lattice (caller bug)")]
    NonIntegralResidueMap,

    #[error("missing residue C_{0}")]
    MissingResidue(usize),

    #[error("c0 must be 1 for the Chern-class interpretation, got {0}")]
    NonUnitC0(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("symbol length disagreement for {0}")]
    SymbolLengthDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
