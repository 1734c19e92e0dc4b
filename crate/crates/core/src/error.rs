use thiserror::Error;

/// Errors raised by parsing and by operations whose preconditions fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid letter name `{0}`")]
    InvalidLetter(String),
    #[error("letter `{0}` is not in the alphabet")]
    UndeclaredLetter(String),
    #[error("duplicate letter `{0}` in alphabet")]
    DuplicateLetter(String),
    #[error("both sides of the relation are empty")]
    EmptyRelation,
    #[error("side `{side}` does not occur at position {position} of `{word}`")]
    RejectedStep {
        word: String,
        side: String,
        position: usize,
    },
    #[error("presentation is special (empty right-hand side)")]
    Special,
    #[error("presentation is not special")]
    NotSpecial,
    #[error("presentation has left cycles")]
    LeftCycles,
    #[error("relation sides have different lengths")]
    NotEqualLength,
    #[error("relation is not an oriented self-overlap free rule")]
    NotSofRule,
    #[error("empty word has no self-overlap structure")]
    EmptyWord,
    #[error("word is not a product of code words: stuck at position {0}")]
    NotFactorable(usize),
    #[error("relation does not have the shape {0}")]
    Shape(&'static str),
    #[error("oracle does not match the unit group: {0}")]
    OracleMismatch(String),
    #[error("{0}")]
    Other(String),
}
