//! Crate-wide error type and exit-code mapping.

use thiserror::Error;

/// Everything that can go wrong across the pipeline.
///
/// The variants are grouped by how the command-line driver maps them to exit
/// codes: input problems exit 1, violated mathematical identities exit 2, and
/// numerical-precision failures exit 3. Everything else is a caller bug
/// (contract) or a deliberate desk-scale refusal (resource guard) and also
/// exits 1.
#[derive(Debug, Error)]
pub enum Error {
    /// Input could not be parsed or failed field-level validation.
    #[error("parse error: {0}")]
    Parse(String),

    /// A precondition of an operation was violated by the caller.
    #[error("contract violation in {op}: {msg}")]
    Contract { op: &'static str, msg: String },

    /// The requested computation exceeds the desk-scale resource guard.
    #[error("resource guard in {op}: {msg}")]
    ResourceGuard { op: &'static str, msg: String },

    /// An internal cross-check that should hold for every valid input failed.
    #[error("internal invariant violation in {op}: {msg}")]
    Invariant { op: &'static str, msg: String },

    /// A quantitative statement the library is asserting about the input
    /// (dimension formula, functional equation, evenness, window membership)
    /// failed outside tolerance.
    #[error("theorem violation: {check}: {msg}")]
    TheoremViolation { check: &'static str, msg: String },

    /// Floating-point resolution was insufficient to certify a result
    /// (e.g. ambiguous zero clustering).
    #[error("precision failure in {op}: {msg}")]
    Precision { op: &'static str, msg: String },

    /// Evaluation hit a pole of a principal L-series; carries the pole order.
    #[error("pole of order {order} at the evaluation point")]
    Pole { order: u32 },

    /// Filesystem / IO problem while reading specs or writing reports.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 = input/usage, 2 = theorem violation,
    /// 3 = precision failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TheoremViolation { .. } => 2,
            Error::Precision { .. } | Error::Pole { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand constructors used throughout the crate.
pub(crate) fn contract(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Contract { op, msg: msg.into() }
}

pub(crate) fn guard(op: &'static str, msg: impl Into<String>) -> Error {
    Error::ResourceGuard { op, msg: msg.into() }
}

pub(crate) fn invariant(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Invariant { op, msg: msg.into() }
}

pub(crate) fn precision(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Precision { op, msg: msg.into() }
}
