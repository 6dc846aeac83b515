use thiserror::Error;

/// Errors surfaced by the library.
///
/// `CapExceeded` is an explicit refusal: enumerations never silently
/// truncate. `InternalInconsistency` signals a violated invariant that is
/// guaranteed by a theorem; hitting it means a bug, and the test suite uses
/// it as a hook.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("duplicate values in input: {0}")]
    DuplicateValues(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("permutation lies outside the class: {0}")]
    OutOfClass(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("internal inconsistency (please report): {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
