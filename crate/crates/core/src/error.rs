use thiserror::Error;

use crate::words::Letter;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet of size {alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },

    #[error("alphabet mismatch: expected size {expected}, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("alphabet size {0} cannot be rendered as single digits; use the delimited format")]
    AlphabetTooLargeForText(usize),

    #[error("invalid letter character {0:?}")]
    InvalidDigit(char),

    #[error("images do not form a permutation of the alphabet")]
    NotABijection,

    #[error("morphism has no image for letter {0}")]
    UndefinedLetter(Letter),

    #[error("morphism image of letter {0} is empty")]
    EmptyImage(Letter),

    #[error("morphism is not prolongable on letter {0}")]
    NotProlongable(Letter),

    #[error("blocks have different lengths")]
    LengthMismatch,

    #[error("parameter index {0} is outside 1..=14")]
    InvalidIndex(usize),

    #[error("family index {0} is outside 1..=10")]
    InvalidFamily(usize),

    #[error("exponents ({i}, {j}, {k}) must be positive and pairwise distinct")]
    DegenerateExponents { i: u64, j: u64, k: u64 },

    #[error("invalid equality pattern {0:?}")]
    InvalidPattern(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed spec file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
