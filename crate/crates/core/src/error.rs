use std::io;

use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller supplied malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),
    /// The request is well-formed but exceeds what an exact method can handle.
    #[error("capability error: {0}")]
    Capability(String),
    /// A formula was evaluated outside the hypotheses it is valid under.
    #[error("domain error: {0}")]
    Domain(String),
    /// A sprinkling schedule violates one of its ordering constraints.
    #[error("schedule infeasible: {0}")]
    ScheduleInfeasible(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capability(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
