use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("undefined input: {0}")]
    UndefinedInput(&'static str),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("membership check failed after descent; input set is probably not convex")]
    ConvexitySuspect,
    #[error("polynomial has odd degree or is not bounded below, so it is not a sum of squares")]
    OddDegree,
    #[error("no Gram matrix exists for the chosen monomial basis")]
    InfeasibleGram,
    #[error("matrix is not positive semidefinite; no certificate can be extracted")]
    CertificateExtraction,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
