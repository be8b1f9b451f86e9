use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("reserved letter `{letter}` at byte {offset}")]
    ReservedLetter { offset: usize, letter: char },

    #[error("letter {letter} is outside the alphabet ({alphabet})")]
    LetterOutOfRange { letter: String, alphabet: String },

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("word length budget exceeded: {length} letters > cap {cap}")]
    BudgetExceeded { length: usize, cap: usize },

    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computed certificate failed its own re-check. Always a bug.
    #[error("internal consistency check failed: {0}")]
    Unsound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
