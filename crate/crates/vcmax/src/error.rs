use thiserror::Error;

/// Errors produced by construction, validation and the enumeration-bound
/// operations. Claim failures (a mathematical assertion that does not hold on
/// the input) are not errors; they are reported in the relevant report types.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what}: size {value} exceeds the enumeration cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    /// The family is not d-maximum on the named subset: the trace there does
    /// not miss exactly one label.
    #[error("family is not {d}-maximum on {{{subset}}}: {missing} of {expected} labels missing")]
    NotMaximum {
        d: usize,
        subset: String,
        missing: usize,
        expected: usize,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A structural invariant that the library itself maintains was observed
    /// broken; indicates a bug or a hand-built value bypassing validation.
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
