use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a web: W({n},{k}) needs k >= 1 and n >= 2(k+1) = {}", 2 * (k + 1))]
    NotAWeb { n: usize, k: usize },

    #[error("not an antiweb: A({n},{k}) needs k >= 2 and n >= 2k = {}", 2 * k)]
    NotAnAntiweb { n: usize, k: usize },

    #[error("unknown node label {0}")]
    UnknownNode(usize),

    #[error("graph too large: {n} nodes exceeds the supported maximum of {max}")]
    GraphTooLarge { n: usize, max: usize },

    #[error("{what} bound exceeded: {actual} > {limit}")]
    BoundExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("inequality is not valid for the integer hull: {reached}")]
    NotValid { reached: String },

    #[error("LP is unbounded; relaxations built here are bounded, so this is an internal inconsistency")]
    Unbounded,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("construction check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("time budget exhausted")]
    Timeout,

    #[error("{what} stopped early: rank is at least {lower}{}", upper.map(|u| format!(" and at most {u}")).unwrap_or_default())]
    Incomplete {
        what: &'static str,
        lower: usize,
        upper: Option<usize>,
    },
}

impl Error {
    /// Failures caused by a configured cap or budget rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. } | Error::GraphTooLarge { .. } | Error::Timeout | Error::Incomplete { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
