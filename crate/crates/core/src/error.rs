use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimensions (m={m}, n={n}): {reason}")]
    InvalidDims { m: usize, n: usize, reason: String },

    #[error("weights belong to different superspaces: {0} vs {1}")]
    DimMismatch(String, String),

    #[error("weight coefficients must sum to zero, got {0}")]
    NonZeroSum(String),

    #[error("weight is not integral: (λ+ρ, α∨) = {value} for α = {root}")]
    NonIntegral { root: String, value: String },

    #[error("coroot requested for isotropic root {0}")]
    IsotropicRoot(String),

    #[error("signature mismatch: {0}")]
    Signature(String),

    #[error("invalid slot permutation: {0}")]
    Permutation(String),

    #[error("tensor is not in g on slot pair ({0}, {1})")]
    NotTraceless(usize, usize),

    #[error("tensor is not supersymmetric across slot pairs")]
    NotSymmetric,

    #[error("nonzero Cartan part on the pair being reduced ({0})")]
    CartanPart(String),

    #[error("reduction produced a term of degree > 1 in λ")]
    LambdaDegree,

    #[error("reduction did not return a multiple of T: {0}")]
    NotMultiple(String),

    #[error("the two reductions agree for every λ; no critical value")]
    Degenerate,

    #[error("realization is inconsistent: {0}")]
    Realization(String),

    #[error("resource cap exceeded: need about {needed_mb} MB, cap is {cap_mb} MB")]
    ResourceCap { needed_mb: u64, cap_mb: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}
