use thiserror::Error;

/// Errors returned by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid coefficient system: {0}")]
    InvalidCoefficientSystem(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("inconclusive numerics: {0}")]
    Numerics(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
