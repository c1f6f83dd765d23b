use thiserror::Error;

/// Errors produced by validation, parsing and fragment checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),

    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),

    #[error("value {0} outside the unit interval")]
    OutsideUnit(String),

    #[error("constant {0} is not dyadic")]
    NotDyadic(String),

    #[error("sigma index {0} out of range 1..=4")]
    SigmaIndex(u32),

    #[error("mu requires arity >= 1")]
    EmptyMu,

    #[error("variable x{0} not covered by environment of length {1}")]
    EnvTooShort(usize, usize),

    #[error("algebra {0} does not support {1}")]
    UnsupportedFragment(String, String),

    #[error("value does not belong to the carrier: {0}")]
    NotInCarrier(String),

    #[error("exhaustive strategy requires a finite carrier (algebra {0})")]
    InfiniteCarrier(String),

    #[error("term not supported on this algebra: {0}")]
    BadTerm(String),

    #[error("lattice is not distributive: {0}")]
    NotDistributive(String),

    #[error("lattice is not bounded")]
    Unbounded,

    #[error("function is not order-preserving at {0}")]
    NotMonotone(String),

    #[error("good pair violated at index {0}: ({1}, {2})")]
    NotGood(i64, String, String),

    #[error("sum cross-check mismatch at index {0}: {1} vs {2} (broken model)")]
    SumCrossCheck(i64, String, String),

    #[error("element has no order-unit bound: {0}")]
    UnboundedElement(String),

    #[error("poset error: {0}")]
    Poset(String),

    #[error("not a two-block lattice congruence: {0}")]
    BadThetaInput(String),

    #[error("carrier size {0} exceeds bound {1}")]
    SizeBound(usize, usize),

    #[error("trivial algebra not admitted here")]
    TrivialAlgebra,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
