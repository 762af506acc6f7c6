use thiserror::Error;

/// Errors raised by the symbolic dynamics toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates an operation's precondition (bad symbol, short word, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A construction request cannot be satisfied (e.g. non-prolongable seed).
    #[error("construction error: {0}")]
    Construction(String),

    /// A configured cap would be exceeded.
    #[error("resource error: {0}")]
    Resource(String),

    /// An internally produced object failed verification.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// A coordinate outside the determined range of a partial point was queried.
    #[error("undetermined: {0}")]
    Undetermined(String),

    /// A desubstitution parse is not unique.
    #[error("ambiguous parse: {0}")]
    Ambiguity(String),

    /// A word has no admissible parse or is not in the language.
    #[error("inadmissible: {0}")]
    Inadmissible(String),

    /// A mathematical hypothesis required by the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Malformed textual input (point specs, words, code files).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
