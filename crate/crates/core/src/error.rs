use thiserror::Error;

use crate::exact::{ExtRational, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("P_{k}(m) is singular at m = 0")]
    Singular { k: usize },

    /// The inductive construction hit a zero denominator (or a zero parameter)
    /// while producing level `level`.
    #[error("recursion breaks down at level {level}: numerator {numerator}, denominator {denominator}")]
    RecursionBreakdown {
        level: usize,
        numerator: Rational,
        denominator: Rational,
    },

    #[error("Hamiltonian not constructible: Delta_{n} = {value}")]
    NotConstructible { n: usize, value: ExtRational },

    #[error("kernel evaluated at its pole z = conj(w)")]
    Pole,

    #[error("finite-difference stencil leaves the interval: {0}")]
    Stencil(String),

    #[error("exponential range exceeded: {0}")]
    Range(String),

    #[error("root finder failed: {0}")]
    OracleFailure(String),

    #[error("real-root count is undefined for the zero polynomial")]
    UndefinedCount,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable identifier, used by the CLI and the C API.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::InvalidInput(_) => "invalid_input",
            Error::Domain(_) => "domain",
            Error::Singular { .. } => "singular",
            Error::RecursionBreakdown { .. } => "recursion_breakdown",
            Error::NotConstructible { .. } => "not_constructible",
            Error::Pole => "pole",
            Error::Stencil(_) => "stencil",
            Error::Range(_) => "range",
            Error::OracleFailure(_) => "oracle_failure",
            Error::UndefinedCount => "undefined_count",
            Error::Internal(_) => "internal",
        }
    }

    /// Whether the error stems from malformed or out-of-domain user input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::Domain(_) | Error::Dimension(_)
        )
    }
}
