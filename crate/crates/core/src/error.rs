//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u32 },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("field order {p}^{k} exceeds the supported word size (q <= 2^20)")]
    FieldTooLarge { p: u32, k: u32 },

    #[error("modulus {0} is not a monic irreducible of the expected degree")]
    BadModulus(String),

    #[error("cannot parse field spec '{0}' (expected 'q' or 'p^k')")]
    BadFieldSpec(String),

    #[error("invalid element code {code} for GF({q})")]
    InvalidElement { code: u32, q: u32 },

    #[error("GF({m}) is not a subfield of GF({q}) ({sub_k} does not divide {k})")]
    InvalidSubfield { m: u32, q: u32, sub_k: u32, k: u32 },

    #[error("operation requires characteristic 2, field has characteristic {p}")]
    EvenCharacteristicOnly { p: u32 },

    #[error("operation requires odd order, field is GF(2^{k})")]
    OddOrderOnly { k: u32 },

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("the two points coincide, no unique line through them")]
    DegeneratePair,

    #[error("degenerate conic: {0}")]
    DegenerateConic(String),

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("invalid nu: absolute trace must be 1 (the pencil conics would be degenerate or intersecting)")]
    InvalidNu,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("validation failed: {0}")]
    ValidationFailed(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not a (0,2,4)-set: a line meets the set in {count} points")]
    NotZeroTwoFourSet { count: usize },

    #[error("witness search exhausted without a solution; this contradicts the expected existence and flags a bug")]
    SearchExhausted,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
