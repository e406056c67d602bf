use thiserror::Error;

use crate::model::Symbol;

/// Structural problems with texts, parsings and grammars.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("alphabet bound {0} is not in 1..=2^32")]
    BadAlphabetBound(u64),
    #[error("symbol {symbol} at position {pos} is not below the alphabet bound {bound}")]
    SymbolOutOfRange {
        pos: usize,
        symbol: Symbol,
        bound: u64,
    },
    #[error("unknown scheme {0:?} (expected lzd or lzmw)")]
    UnknownScheme(String),
    #[error("phrase {phrase} references {target}, which is not an earlier dictionary entry")]
    BadReference { phrase: usize, target: usize },
    #[error("phrase {phrase} has a single part but is not the last phrase")]
    TruncatedPhrase { phrase: usize },
    #[error("rule {0} is part of a derivation cycle")]
    Cycle(usize),
    #[error("rule {rule} references undefined rule {target}")]
    UndefinedRule { rule: usize, target: usize },
}

/// Errors while reading or writing the on-disk formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("input is empty")]
    Empty,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FormatError {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            msg: msg.into(),
        }
    }
}
