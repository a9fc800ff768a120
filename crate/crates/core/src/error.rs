// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("system count {0} is outside 1..=16")]
    InvalidArity(usize),

    #[error("dimension mismatch: expected n={expected}, found n={found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} is outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("function takes value 0 at the all-zero string")]
    MissingTheta,

    #[error("expansion evaluates to {value} at string {string}, expected 0 or 1")]
    NonBoolean { string: String, value: i64 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid term: {0}")]
    TermValidation(String),

    #[error("undecided at n={n}: enumeration guard is {max} (set HOTKIT_MAX_N to raise it)")]
    GuardExceeded { n: usize, max: usize },

    #[error("malformed chain: {0}")]
    InvalidChain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not a valid type structure: {0}")]
    InvalidStructure(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("invariant failure: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for the failures that mean the library disagrees with itself,
    /// as opposed to bad input.
    pub fn is_invariant_failure(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::InvalidStructure(_))
    }
}
