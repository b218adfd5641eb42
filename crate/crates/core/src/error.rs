use std::fmt;

use thiserror::Error;

/// A malformed input, positioned at the offending field and indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub position: Vec<usize>,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            position: Vec::new(),
            message: message.into(),
        }
    }

    pub fn at(field: impl Into<String>, position: &[usize], message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            position: position.to_vec(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field)?;
        for i in &self.position {
            write!(f, "[{i}]")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(#[from] InputError),
    /// A caller broke an operation's precondition.
    #[error("contract violated: {0}")]
    Contract(String),
    /// The operation needs a hypothesis (basic, prelinear, ...) the algebra lacks.
    #[error("inapplicable: requires {0}")]
    Inapplicable(&'static str),
    /// Two independent computations disagree where a theorem says they cannot.
    /// Always an implementation bug or an invalid algebra.
    #[error("FATAL inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
