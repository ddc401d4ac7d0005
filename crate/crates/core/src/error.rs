use thiserror::Error;

use crate::group::GroupId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {text:?} as an element of {group}: {reason}")]
    Parse {
        group: GroupId,
        text: String,
        reason: String,
    },

    #[error("{text:?} is well formed but is not an element of {group}")]
    NotAnElement { group: GroupId, text: String },

    #[error("unknown group {0:?} (expected 2O, Q24 or SL23)")]
    UnknownGroup(String),

    #[error("group construction defect in {group}: {detail}")]
    Construction { group: GroupId, detail: String },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid factor recipe: {0}")]
    InvalidRecipe(String),

    #[error("unknown solution {0:?}")]
    UnknownSolution(String),

    #[error("undefined {kind} {name:?}")]
    Undefined { kind: &'static str, name: String },

    #[error("malformed document: {0}")]
    Document(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
