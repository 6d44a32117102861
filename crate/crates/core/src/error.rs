use std::io;

use thiserror::Error;

/// Errors produced by the streaming algorithms and their I/O plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("index {index} out of range for text of length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("byte 0x{0:02x} is not in the alphabet")]
    NotInAlphabet(u8),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("replayable source required")]
    NotReplayable,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
