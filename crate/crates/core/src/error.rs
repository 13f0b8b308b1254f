//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while constructing, serializing, or executing
/// a convertible code.
#[derive(Debug, Error)]
pub enum Error {
    // --- fields -----------------------------------------------------------
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not irreducible over GF({p})")]
    NotIrreducible { p: u64 },
    #[error("modulus has wrong shape: {detail}")]
    DegreeMismatch { detail: String },
    #[error("encoding {encoding} is out of range for {field}")]
    EncodingOutOfRange { encoding: String, field: String },
    #[error("field order q = {q} too large: primitive-element search needs q - 1 to fit in 128 bits")]
    FieldTooLarge { q: String },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,

    // --- matrices ---------------------------------------------------------
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,

    // --- hankel arrays ----------------------------------------------------
    #[error("hankel array size m = {m} exceeds field order q = {q}")]
    SizeExceedsField { m: usize, q: String },
    #[error("greedy hankel search exhausted all candidates for m = {m} (internal error)")]
    SearchExhausted { m: usize },
    #[error("requested entries fall outside the hankel triangle (need i + j - 1 <= {m})")]
    OutsideTriangle { m: usize },

    // --- constructions ----------------------------------------------------
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated for {scheme}: requires {inequality}")]
    PreconditionViolated { scheme: String, inequality: String },
    #[error("scheme {0} does not support restriction (no shared hankel array)")]
    NotRestrictable(String),

    // --- conversion -------------------------------------------------------
    #[error("stripe {stripe} is missing block {block}")]
    MissingBlock { stripe: usize, block: usize },
    #[error("stripe does not match code: {0}")]
    CodeMismatch(String),
    #[error("not enough blocks to decode: have {available}, need {needed}")]
    TooFewBlocks { available: usize, needed: usize },
    #[error("selected decode columns form a singular submatrix")]
    SingularSubmatrix,

    // --- verification oracles ---------------------------------------------
    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),

    // --- persistence ------------------------------------------------------
    #[error("malformed {what}: {detail}")]
    Format { what: String, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
