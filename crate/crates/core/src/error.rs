//! Crate-wide error type.

/// Errors raised by constructions and verifications in this crate.
///
/// Every fallible precondition names the violated constraint in its payload
/// so that callers (CLI, bindings, tests) can surface it verbatim.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u32 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate form: {0}")]
    DegenerateForm(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("candidate cap exceeded: {0}")]
    CapExceeded(String),

    #[error("certificate mismatch at stage `{stage}`: expected {expected}, got {actual}")]
    CertifyMismatch {
        stage: String,
        expected: String,
        actual: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
