use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },

    #[error("ultimately periodic set needs a nonempty cycle")]
    EmptyCycle,

    #[error("period product {product} exceeds the alignment cap {cap}")]
    PeriodCapExceeded { product: u64, cap: u64 },

    #[error("carrier with {atoms} atoms is too large for {context} (limit {limit})")]
    CarrierTooLarge { atoms: u8, limit: u8, context: &'static str },

    #[error("operation requires an eventually periodic descriptor: {context}")]
    NonEventuallyPeriodic { context: &'static str },

    #[error("not representable in the descriptor taxonomy: {0}")]
    NotRepresentable(String),

    #[error("set is not upward closed: {above} lies above member {member} but is missing")]
    NotUpwardClosed { member: String, above: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("unknown suite tag {0:?}")]
    UnknownSuite(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("limit violation: {0}")]
    LimitViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
