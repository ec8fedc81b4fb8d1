use thiserror::Error;

use crate::Rational;

/// Errors raised by the `majcl` library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a tournament needs at least 3 candidates, got {0}")]
    TooFewCandidates(usize),

    #[error("expected {expected} pair bits for the given size, got {got}")]
    BitCount { expected: usize, got: usize },

    #[error("candidate {index} is out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("size mismatch: {left} vs {right} candidates")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("candidates must be distinct")]
    RepeatedCandidate,

    #[error("cycle needs at least 3 candidates, got {0}")]
    CycleTooShort(usize),

    /// Pairs whose table entry (or vote count) sits exactly at one half.
    #[error("tied pairs: {0:?}")]
    Tie(Vec<(usize, usize)>),

    #[error("weights must sum to 1, got {0}")]
    WeightSum(Rational),

    #[error("weight {0} must be positive")]
    NonPositiveWeight(Rational),

    #[error("value {0} is outside [0, 1]")]
    ValueOutOfRange(Rational),

    #[error("empty input")]
    Empty,

    #[error("pair ({u}, {v}) is not a directed edge u -> v")]
    NotAnEdge { u: usize, v: usize },

    #[error("generator is balanced")]
    BalancedGenerator,

    #[error("generator is not balanced")]
    GeneratorNotBalanced,

    #[error("target is not pseudo-balanced: edge ({u}, {v}) lies on no directed cycle")]
    TargetNotPseudoBalanced { u: usize, v: usize },

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("n = {n} is outside the supported range {min}..={max}")]
    UnsupportedSize { n: usize, min: usize, max: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
