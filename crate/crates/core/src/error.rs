use thiserror::Error;

use crate::monomial::Monomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: expected {expected} variables, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("operation is undefined for the zero ideal")]
    ZeroIdeal,

    #[error("operation is undefined for the unit ideal")]
    UnitIdeal,

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("{what} exceeded the configured cap of {limit}")]
    ResourceExceeded { what: &'static str, limit: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("valuation is not supported on the ideal (value 0)")]
    UnsupportedValuation,

    #[error("hypothesis failed: {reason}")]
    HypothesisFailed {
        reason: String,
        witness: Option<Monomial>,
    },

    #[error("supplied components do not reproduce the ideal")]
    ComponentMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn generators(limit: usize) -> Self {
        Error::ResourceExceeded {
            what: "generator count",
            limit,
        }
    }
}
