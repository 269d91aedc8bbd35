use thiserror::Error;

use crate::word::ReducedWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter must be a positive integer or `inf`, got {0}")]
    InvalidParam(String),

    #[error("malformed word {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("({i},{m},{n},{j}) matches no abridged word shape")]
    Shape { i: u64, m: u64, n: u64, j: u64 },

    #[error("({i},{m},{n},{j}) violates a reduced-form bound: {reason}")]
    Bound {
        i: u64,
        m: u64,
        n: u64,
        j: u64,
        reason: &'static str,
    },

    #[error("exponent {0} exceeds the supported maximum 2^32")]
    Overflow(u64),

    #[error("{0} is not idempotent")]
    NonIdempotent(ReducedWord),

    #[error("({q}, {r}) does not satisfy the bicyclic presentation")]
    NotBicyclic { q: ReducedWord, r: ReducedWord },

    #[error("cap {cap} is too small to decide membership of {x} (need at least {needed})")]
    CapTooSmall {
        x: ReducedWord,
        cap: u64,
        needed: u64,
    },

    #[error("parameters do not satisfy the precondition: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("word of length {len} exceeds the table bound {bound}")]
    WordTooLong { len: usize, bound: usize },

    #[error("oracle cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
