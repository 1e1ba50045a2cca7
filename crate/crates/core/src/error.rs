use thiserror::Error;

/// Errors raised by the lattice and polytope operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not primitive (divisible by {0})")]
    NotPrimitive(String),
    #[error("point is outside the span of the lattice")]
    OutsideSpan,
    #[error("points are not co-spherical in their affine span")]
    NotCospherical,
    #[error("need at least {0} affinely independent points")]
    Degenerate(usize),
    #[error("quotient group is not cyclic: invariant factors {0:?}")]
    NotCyclic(Vec<String>),
    #[error("{0} does not divide the quotient order {1}")]
    NotDivisor(String, String),
    #[error("lattice is not integral")]
    NotIntegral,
    #[error("sublattice is not contained in the superlattice")]
    NotContained,
    #[error("polytope is not full-dimensional (affine rank {0} < {1})")]
    NotFullDimensional(usize, usize),
    #[error("polytope does not generate its lattice (index {0})")]
    NotGenerating(String),
    #[error("mixed symmetry: {0} of {1} vertices have antipodes")]
    MixedSymmetry(usize, usize),
    #[error("rank {0} exceeds the guard {1}")]
    RankGuard(usize, usize),
    #[error("vector norm {0} is outside the supported range")]
    UnsupportedNorm(String),
    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("empty vertex set")]
    Empty,
    #[error("facet is degenerate")]
    DegenerateFacet,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
