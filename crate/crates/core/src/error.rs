use thiserror::Error;

/// Errors raised by the library. Every variant except `Resource` signals
/// either bad input or an internal inconsistency; none are recoverable by
/// retrying.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HwError {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("label ({p},{q},{r}) is not canonical for s={s}; canonical form is ({cp},{cq},{cr})")]
    NotCanonical {
        s: u32,
        p: u32,
        q: u32,
        r: u32,
        cp: u32,
        cq: u32,
        cr: u32,
    },

    #[error("s={s} exceeds the {what} cap of {cap} (set HW_MAX_S to raise it)")]
    Resource { what: &'static str, s: u32, cap: u32 },

    #[error("value is not a rational integer: {0}")]
    NotRationalInteger(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HwError>;
