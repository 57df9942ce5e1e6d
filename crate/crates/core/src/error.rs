use thiserror::Error;

use crate::complex::FaceId;

/// Rejections of a swap sequence. Positions, steps and wires are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WiringError {
    #[error("a wiring diagram needs at least one wire")]
    NoWires,
    #[error("step {step}: track {track} is outside [1, {}]", n - 1)]
    TrackOutOfRange { step: usize, track: usize, n: usize },
    #[error("expected {expected} swaps, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("wires {} and {} cross a second time at step {step}", pair.0, pair.1)]
    DoubleCross { pair: (usize, usize), step: usize },
    #[error("the kept wire set is empty")]
    EmptySubset,
    #[error("wire {wire} does not exist in a diagram with {n} wires")]
    WireOutOfRange { wire: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("`{0}` is not a non-negative integer")]
    BadInteger(String),
    #[error("unexpected input after the swap line")]
    TrailingInput,
    #[error(transparent)]
    Invalid(WiringError),
}

/// Text-format error with a 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("the point lies on wire {}", wire + 1)]
    OnBoundary { wire: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("face {0} does not exist")]
    NoSuchFace(FaceId),
    #[error("face {0} is unbounded")]
    UnboundedFace(FaceId),
    #[error("the arrangement has no (>=5)-gon")]
    NoGe5Gon,
    #[error("the arrangement has several (>=5)-gons: {0:?}")]
    MultipleGe5Gons(Vec<FaceId>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("n = {0} is outside the supported range 1..=7")]
    NTooLarge(usize),
    #[error("the exhaustive suites support 1 <= n <= 6, got n = {0}")]
    SuitesTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NecklaceError {
    #[error("`{0}` is not a bitstring of even length")]
    BadBitstring(String),
    #[error("opposite beads {0} and {1} have the same color")]
    NotSelfDual(usize, usize),
    #[error("the construction needs m >= 3, got m = {0}")]
    TooSmall(usize),
    #[error("the zonogon directions are invalid: {0}")]
    BadDirections(String),
    #[error("no tilt in {halvings} halvings produced a valid arrangement: {reason}")]
    EpsilonExhausted { halvings: u32, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("the arrangement has no lines")]
    Empty,
    #[error("lines {0} and {1} have the same slope")]
    DuplicateSlope(usize, usize),
    #[error("lines {0}, {1} and {2} pass through one point")]
    ConcurrentLines(usize, usize, usize),
    #[error("malformed line arrangement: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("the diagram is not in the family Im: {0}")]
    NotInIm(String),
    #[error("the (>=5)-gon has no three consecutive non-critical edges that frame an insertion")]
    NoConsecutiveTriple,
    #[error("the insertion frame violates its invariants: {0}")]
    InvalidFrame(String),
    #[error("base-case search gave up after {attempts} attempts for n = {n}")]
    BaseCaseExhausted { n: usize, attempts: usize },
    #[error("inserting the removed wire failed: {0}")]
    InsertionFailed(String),
    #[error(transparent)]
    Lines(#[from] LineError),
}
