use thiserror::Error;

/// Errors raised by the library. Input problems and violated invariants are
/// kept apart so front ends can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group too large: closure exceeds {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("disconnected surface: squares split into {orbits} orbits")]
    Disconnected { orbits: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DegreeMismatch(..)
                | Error::InvalidPermutation(_)
                | Error::Disconnected { .. }
                | Error::Input(_)
                | Error::GroupTooLarge { .. }
        )
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
