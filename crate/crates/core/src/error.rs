use thiserror::Error;

/// Errors raised by the exact computations.
///
/// Variants are grouped so that callers (the CLI in particular) can map
/// them onto "bad input" versus "violated precondition".
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero class has no primitivity")]
    ZeroClass,

    #[error("class is not primitive (content {content})")]
    NotPrimitive { content: String },

    #[error("invalid twist letter: {0}")]
    InvalidLetter(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("word is not positive (letter {position} has power -1)")]
    NotPositive { position: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid bounding pair data: {0}")]
    InvalidBoundingPair(String),

    #[error("span of the given classes is not unimodular (Gram determinant {det})")]
    NotUnimodular { det: String },

    #[error("non-integral result: {0}")]
    NonIntegral(String),

    #[error("fibration is not marked hyperelliptic; Endo's formula does not apply")]
    NotHyperelliptic,

    #[error("fibration has no section; the quotient presentation of H_1 needs one")]
    NoSection,

    #[error("saturation did not stabilise within {rounds} rounds")]
    SaturationCap { rounds: usize },

    #[error("transcription check failed: {0}")]
    Transcription(String),

    #[error("{0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
