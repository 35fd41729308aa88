use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable context must contain at least one name")]
    EmptyContext,

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("generator {index} is the zero polynomial")]
    ZeroGenerator { index: usize },

    #[error("a generator system needs at least one generator")]
    NoGenerators,

    #[error("too many generators for the preordering closure (limit 16, got {0})")]
    TooManyGenerators(usize),

    #[error("the zero vector does not define a grading")]
    ZeroGradingVector,

    #[error("`{0}` is not a permutation of the variable indices")]
    BadPriority(String),

    #[error("invalid term order spec `{0}` (expected e.g. `deglex:x,y` or `lex:x,y`)")]
    BadOrderSpec(String),

    #[error("invalid integer vector `{0}` (expected comma-separated integers, e.g. `1,-2`)")]
    BadVectorSpec(String),

    #[error("invalid rational `{0}`")]
    BadRational(String),

    #[error("a linear system needs at least one row")]
    EmptySystem,

    #[error("at least one grading vector is required")]
    NoDirections,

    #[error("search bound must be at least 1")]
    BadBound,

    #[error("integer search space is too large ({0} candidates)")]
    SearchSpaceTooLarge(u128),

    #[error("the part list for a witness search is empty")]
    EmptyParts,

    #[error("search scale {0} exceeds the supported maximum of 30")]
    ScaleTooLarge(u32),

    #[error("samples-per-scale and denominator bound must be at least 1")]
    BadSearchConfig,

    #[error("tentacle scaling factors must be at least 1")]
    LambdaBelowOne,

    #[error("tentacle box interval {0} is empty or degenerate")]
    DegenerateBox(usize),

    #[error("certificate does not structurally match the system: {0}")]
    CertificateShape(String),
}

/// A syntax or validation error while reading polynomial text.
///
/// `position` is the byte offset into the input at which the problem
/// was detected.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid rational literal: {0}")]
    BadLiteral(String),
    #[error("unexpected trailing input")]
    TrailingInput,
}
