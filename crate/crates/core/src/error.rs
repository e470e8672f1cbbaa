use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("empty matrix")]
    EmptyMatrix,

    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiViolation(String, String, String),
    #[error("bracket table is not antisymmetric on ({0}, {1})")]
    NotAntisymmetric(String, String),
    #[error("bilinear form is not invariant on ({0}, {1}, {2})")]
    FormNotInvariant(String, String, String),
    #[error("form cannot be normalized: {0}")]
    NormalizationImpossible(String),
    #[error("dual Coxeter number {0} is not a positive integer")]
    NonIntegerDualCoxeter(String),
    #[error("malformed algebra description: {0}")]
    BadAlgebra(String),
    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),

    #[error("generator {0} is not in the negative part")]
    PositiveFactorInNegativeMode(String),
    #[error("cannot parse monomial {0:?}")]
    ParseMonomial(String),

    #[error("truncation bounds too large: {0} basis monomials exceed the budget of {1}")]
    BoundsTooLargeForMemory(usize, usize),
    #[error("result leaves the computed window: {0}")]
    TruncationEscape(String),
    #[error("singular vector search at depth {depth} needs bound {depth} <= {bound}")]
    InsufficientHeadroom { depth: u32, bound: u32 },
    #[error("parameters are not dominant: {0}")]
    NotDominant(String),
    #[error("level equals minus the dual Coxeter number")]
    LevelIsMinusDualCoxeter,
    #[error("operation needs an irreducible-quotient module")]
    NeedsQuotient,

    #[error("element has a factor outside the negative part: {0}")]
    NonNegativePart(String),
    #[error("context is not dominant: {0}")]
    NotDominantContext(String),
    #[error("highest weight of the loop module must be nonzero")]
    ZeroLoopWeight,

    #[error("unknown preset {0:?}")]
    PresetUnknown(String),
    #[error("verdict mismatch in {preset}: {detail}")]
    VerdictMismatch { preset: String, detail: String },
    #[error("I/O failure on {path}: {msg}")]
    IoFailure { path: String, msg: String },
    #[error("bad input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
