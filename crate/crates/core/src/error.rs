use thiserror::Error;

use crate::syntax::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("state budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("not guarded: {0}")]
    NotGuarded(String),
    #[error("side condition of {axiom} violated: {detail}")]
    SideCondition { axiom: String, detail: String },
    #[error("missing metavariable `{0}`")]
    MissingMeta(String),
    #[error("move not present: {0}")]
    MoveNotPresent(String),
    #[error("not equivalent: {0}")]
    NotEquivalent(String),
    #[error("input too large for the brute-force oracle ({0} states)")]
    OracleTooLarge(usize),
    #[error("step {step}: {reason}")]
    Check { step: usize, reason: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Error {
        Error::Internal(msg.into())
    }
}
