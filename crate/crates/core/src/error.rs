use thiserror::Error;

/// Errors raised while parsing input or running bounded searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("malformed exponent in `{0}`")]
    MalformedExponent(String),

    #[error("malformed token `{0}`")]
    MalformedToken(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("line {line}: {message}")]
    PresentationSyntax { line: usize, message: String },

    #[error("cyclic subgroup generator must be a nontrivial word")]
    TrivialGenerator,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("budget exhausted after {0} units of work")]
    BudgetExhausted(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
