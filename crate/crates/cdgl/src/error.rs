//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid generator name `{0}`: names must match [A-Za-z_][A-Za-z0-9_]*")]
    InvalidGeneratorName(String),

    #[error("a context needs at least one generator")]
    EmptyGenerators,

    #[error("truncation order must be at least 1")]
    InvalidTruncation,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("truncation mismatch: source order {from}, target order {to}")]
    TruncationMismatch { from: usize, to: usize },

    #[error("expected zero scalar part, found {0}")]
    NonzeroScalar(String),

    #[error("expected scalar part 1, found {0}")]
    ScalarNotOne(String),

    #[error("element is not degree-homogeneous of degree {expected}")]
    NotHomogeneous { expected: i64 },

    #[error("word length {0} outside 1..={1}")]
    LengthOutOfRange(usize, usize),

    #[error("image of `{generator}` must be homogeneous of degree {expected}")]
    ImageDegree { generator: String, expected: i64 },

    #[error("image of `{generator}` must have zero scalar part")]
    ImageScalar { generator: String },

    #[error("differential does not square to zero on `{generator}`")]
    DifferentialSquare { generator: String },

    #[error("element of degree {found} is not Maurer-Cartan material (need degree -1)")]
    MaurerCartanDegree { found: String },

    #[error("element is not a Maurer-Cartan element")]
    NotMaurerCartan,

    #[error("element is not a cycle")]
    NotACycle,

    #[error("differential is not word-length homogeneous on `{0}`")]
    NotLengthHomogeneous(String),

    #[error("coefficient table too short: need {needed} entries, have {have}")]
    TableTooShort { needed: usize, have: usize },

    #[error("simplex dimension {0} outside supported range 0..=4")]
    UnsupportedDimension(usize),

    #[error("simplex models need truncation order at least 2, got {0}")]
    ModelTruncation(usize),

    #[error("invalid coface map: {0}")]
    InvalidCoface(String),

    #[error("coface is not a chain map on `{0}`")]
    CofaceNotChainMap(String),

    #[error("product needs at least {needed} factors")]
    TooFewFactors { needed: usize },

    #[error("no section pairing is available for this differential")]
    NoSection,

    #[error("call `{0}` requires a differential")]
    NeedsDifferential(String),

    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),

    #[error("unsupported file format version {0}")]
    UnsupportedVersion(u32),

    #[error("file does not describe the expected context: {0}")]
    ContextDescriptor(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
