use thiserror::Error;

/// Crate-wide error type.
///
/// Element payloads are carried pre-formatted so the error stays independent
/// of the scalar type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime fields require p >= 5, got {0}")]
    CharacteristicTooSmall(u64),

    #[error("invalid scalar `{text}`: {reason}")]
    ScalarParse { text: String, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("principal powers start at exponent 1")]
    ZeroExponent,

    #[error("gametization parameter must differ from 1")]
    GammaIsOne,

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("identity {identity} requires a weight, but none was supplied")]
    WeightRequired { identity: String },

    #[error("identity {identity} takes {expected} element argument(s)")]
    IdentityArity { identity: String, expected: usize },

    #[error("identity coefficients must satisfy alpha + beta + gamma = 1")]
    CoefficientSum,

    #[error("exhaustive enumeration needs a finite field")]
    NonFiniteField,

    #[error("evaluation budget exceeded: {required} needed, budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("products do not vanish under the weight candidate: basis pair ({i}, {j}) maps to {product} with weight value {value}")]
    StarPrecondition {
        i: usize,
        j: usize,
        product: String,
        value: String,
    },

    #[error("element has weight {0}, expected 1")]
    WeightNotOne(String),

    #[error("idempotent {element} has weight {value}, expected 1")]
    IdempotentWeight { element: String, value: String },

    #[error("element is not idempotent: {0}")]
    NotIdempotent(String),

    #[error("Peirce case mismatch: {0}")]
    PeirceCase(String),

    #[error("power-associativity degree must lie in 4..=8, got {0}")]
    DegreeBound(usize),

    #[error("polarization at degree {degree} needs characteristic > {degree}, field has characteristic {p}")]
    CharacteristicDegree { p: u64, degree: usize },

    #[error("nil check bound must be at least 2, got {0}")]
    NilBound(usize),

    #[error("invalid algebra file: {0}")]
    FileInvariant(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid search configuration: {0}")]
    SearchConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
