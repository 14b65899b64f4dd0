use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and algebra layers.
#[derive(Debug, Error)]
pub enum ArqError {
    #[error("field mismatch: operands live over different fields")]
    FieldMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid field spec: {0}")]
    InvalidField(String),

    #[error("cannot parse scalar {text:?}: {reason}")]
    ScalarParse { text: String, reason: String },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("non-admissible relation: {0}")]
    NonAdmissible(String),

    #[error("nilpotency bound too small: {0}")]
    NilpotencyTooSmall(String),

    #[error("algebra inconsistency: {0}")]
    Inconsistent(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),

    #[error("not a Frobenius functional: {0}")]
    DegenerateForm(String),

    #[error("algebra mismatch: representations live over different algebras")]
    AlgebraMismatch,

    #[error("not a representation: relation {0} does not annihilate the matrices")]
    RelationViolated(String),

    #[error("not an algebra automorphism: {0}")]
    NotAutomorphism(String),

    #[error("decomposition not certified; extend field ({0})")]
    Uncertified(String),

    #[error("translate undefined: module has a projective summand")]
    TauUndefined,

    #[error("module is projective")]
    Projective,

    #[error("module is not indecomposable")]
    NotIndecomposable,

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ArqError>;
