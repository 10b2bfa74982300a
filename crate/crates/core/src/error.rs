use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parity undefined for the zero polynomial")]
    ParityUndefined,
    #[error("non-graded substitution: {0}")]
    NonGradedSubstitution(String),
    #[error("polynomial is not multihomogeneous")]
    NotMultihomogeneous,
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("polynomial has mixed parity")]
    MixedParity,
    #[error("polynomial must only involve odd variables")]
    EvenVariablesPresent,
    #[error("multilinear space needs at least one variable (k + n >= 1)")]
    EmptyVariableSet,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),
    #[error("variable {0} is not assigned")]
    UnassignedVariable(String),
    #[error("assignment violates the grading at {0}")]
    ParityViolation(String),
    #[error("resource cap exceeded: {needed} entries requested, cap is {cap}")]
    ResourceCap { needed: u128, cap: u128 },
    #[error("basis property violated: {0}")]
    BasisViolated(String),
    #[error("invariance precondition failed: {0}")]
    InvarianceFailed(String),
    #[error("leading term check failed: {0}")]
    LeadingTermMismatch(String),
    #[error("invalid exponent vector: {0}")]
    InvalidExponentVector(String),
    #[error("tableau is not of standard prefix form: {0}")]
    NotPrefixForm(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("vectors are not comparable in the product order")]
    NotComparable,
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("reduction certificate failed: {0}")]
    CertificateFailed(String),
    #[error("format error: {0}")]
    Format(String),
}
