use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands mix exact and floating scalars")]
    MixedMode,

    #[error("{0} requires exact (rational) mode")]
    ExactRequired(&'static str),

    #[error("division by zero in {0}")]
    DivisionByZero(String),

    #[error("write at ({row}, {col}) falls outside the band of a {rows}x{cols} matrix")]
    OutsideBand {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    /// A functional stops being quasi-definite at some index: a vanishing
    /// leading recurrence coefficient, a zero norm, or an undefined
    /// (zero-denominator) coefficient.
    #[error("{family}: not quasi-definite at n = {index}: {reason}")]
    QuasiDefinite {
        family: String,
        index: usize,
        reason: String,
    },

    #[error("parameter domain: {0}")]
    Domain(String),

    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("inconsistent system: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn quasi(family: &str, index: usize, reason: impl Into<String>) -> Self {
        Error::QuasiDefinite {
            family: family.to_string(),
            index,
            reason: reason.into(),
        }
    }

    /// True for errors that signal a breakdown of quasi-definiteness
    /// (as opposed to usage or parameter errors).
    pub fn is_quasi_definite(&self) -> bool {
        matches!(self, Error::QuasiDefinite { .. } | Error::DivisionByZero(_))
    }
}
