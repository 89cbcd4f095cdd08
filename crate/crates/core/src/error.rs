use thiserror::Error;

use crate::algebra::Law;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("not an ai-semiring: {law} fails at ({}, {}, {})", .witness[0], .witness[1], .witness[2])]
    NotAiSemiring { law: Law, witness: [String; 3] },

    #[error("invalid ideal filter: {0}")]
    InvalidIdeal(String),

    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unassigned variable `{0}`")]
    UnassignedVariable(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
