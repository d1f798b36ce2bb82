use thiserror::Error;

use crate::game::Player;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed descriptor, file or argument.
    #[error("config: {0}")]
    Config(String),

    #[error("{what} cap exceeded: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("cross-space operation: {0}")]
    CrossSpace(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("round {round}: illegal move by {player}: {detail}")]
    IllegalMove {
        round: usize,
        player: Player,
        detail: String,
    },

    #[error("strategy {name}: {detail}")]
    Strategy { name: String, detail: String },

    #[error("oracle {name}: {detail}")]
    Oracle { name: String, detail: String },

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn strategy(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Strategy {
            name: name.into(),
            detail: detail.into(),
        }
    }

    pub fn oracle(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Oracle {
            name: name.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command line front end and mirrored in
    /// service error payloads: 2 configuration, 3 engine/contract violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Json(_) | Error::Unsupported(_) => 2,
            _ => 3,
        }
    }

    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Json(_) => "malformed",
            Error::Unsupported(_) => "unsupported",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::CrossSpace(_) => "cross_space",
            Error::IllegalMove { .. } => "illegal_move",
            Error::Strategy { .. } => "strategy",
            Error::Oracle { .. } => "oracle",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
