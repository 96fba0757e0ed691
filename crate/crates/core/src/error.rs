use thiserror::Error;

/// Errors raised by constructors and size-capped operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..={n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    #[error("window must be nonempty")]
    EmptyWindow,

    #[error("window entries {first} and {second} coincide modulo {n} (distinctness violated)")]
    Distinctness { first: i64, second: i64, n: usize },

    #[error("window sum is {actual}, expected {expected} (centering violated)")]
    Centering { actual: i64, expected: i64 },

    #[error("empty permutation not allowed here")]
    EmptyPermutation,

    #[error("word sums to {0}, expected 0")]
    NonZeroWord(i64),

    #[error("word length {word} does not match permutation size {perm}")]
    LengthMismatch { perm: usize, word: usize },

    #[error("horizon {given} is below the sound minimum {minimum}")]
    HorizonTooSmall { given: u64, minimum: u64 },

    #[error("size {n} exceeds the brute-force cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("size must be at least {min}, got {n}")]
    SizeTooSmall { n: usize, min: usize },

    #[error("declared size {declared} disagrees with window length {actual}")]
    SizeMismatch { declared: usize, actual: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate class: no indecomposable elements")]
    DegenerateClass,

    #[error("class is classified {actual}, expected {expected}")]
    Misclassified { expected: String, actual: String },

    #[error("invalid class specification: {0}")]
    InvalidClass(String),

    #[error("need at least {min} terms, got {got}")]
    TooFewTerms { min: usize, got: usize },

    #[error("series has zero constant term; reciprocal undefined")]
    NotInvertible,
}

pub type Result<T> = std::result::Result<T, Error>;
