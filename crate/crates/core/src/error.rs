use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("not an involution: {0}")]
    NotAnInvolution(String),
    #[error("pattern too short: {0} (length must be at least 2)")]
    PatternTooShort(String),
    #[error("bad pattern spec: {0}")]
    BadPatternSpec(String),
    #[error("duplicate pattern: {0}")]
    DuplicatePattern(String),
    #[error("set not simple: {inner} is an H-pattern of {outer}")]
    NotSimple { inner: String, outer: String },
    #[error("set not self-inverse: missing {0}")]
    NotSelfInverse(String),
    #[error("occurrence {0} does not match the word")]
    InvalidOccurrence(String),
    #[error("inflation length mismatch: skeleton has {skeleton} entries, got {parts} parts")]
    InflationMismatch { skeleton: usize, parts: usize },
    #[error("empty marked permutation in inflation")]
    EmptyPart,
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("unknown variable: {0}")]
    UnknownVariable(String),
    #[error("constant term is not a unit (must be 1 or -1)")]
    NonUnitConstant,
    #[error("ill-founded substitution: {0}")]
    IllFoundedSubstitution(String),
    #[error("continued fraction argument {0} has an invalid x-order")]
    BadCfArgument(&'static str),
    #[error("continued fraction depth {depth} too small for order {order} (need at least {needed})")]
    InsufficientDepth { depth: usize, order: u32, needed: usize },
    #[error("continued fraction unstable at depth {0}")]
    UnstableDepth(usize),
    #[error("no closed form for pattern set {0}")]
    UnsupportedFamily(String),
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
    #[error("negative coefficient {coef} in distribution at {monomial}")]
    NegativeCoefficient { coef: String, monomial: String },
    #[error("cross-check failed: {0}")]
    Mismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
