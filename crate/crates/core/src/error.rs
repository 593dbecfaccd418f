use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot compose a map into {left_target} with a map out of {right_source}")]
    CompositionMismatch {
        left_target: usize,
        right_source: usize,
    },
    #[error("invalid partial bijection: {0}")]
    InvalidPartialBijection(String),
    #[error("cannot build generator: {0}")]
    Construction(String),
    #[error("size {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("tuple length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid wreath element: {0}")]
    InvalidElement(String),
    #[error("base monoid {0:?} has no multiplication table (no evaluation)")]
    NoEvaluation(String),
    #[error("symbol {symbol} is not in the alphabet of {context}")]
    AlphabetMismatch { symbol: String, context: String },
    #[error("typing error: {0}")]
    Typing(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("separation rules satisfy neither length condition: {0}")]
    SeparationRules(String),
    #[error("element lies outside the target structure: {0}")]
    NotInTarget(String),
    #[error("congruence enumeration is unsupported for {0} presentations")]
    UnsupportedFlavor(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
