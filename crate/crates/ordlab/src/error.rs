use thiserror::Error;

/// Crate-wide error type. Variants carry enough context to render a one-line
/// diagnostic; the CLI maps `Error` to exit code 1 (verification or
/// construction failure) and argument problems to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("size limit exceeded: {what} = {got}, max {max}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        max: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    #[error("order family {family} is not defined on this structure: {reason}")]
    FamilyDomain { family: String, reason: String },

    #[error("matrix is not of negative type: min eigenvalue {lambda_min}")]
    NotNegativeType { lambda_min: f64 },

    #[error("construction failed after {attempts} attempts: {reason}")]
    ConstructionFailed { attempts: u32, reason: String },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
