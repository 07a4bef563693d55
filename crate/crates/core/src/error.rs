use std::io;

use crate::corpus::PosTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown document ids: {}", .0.join(", "))]
    UnknownDocuments(Vec<String>),

    #[error("alias map: {0}")]
    Alias(String),

    #[error("index line {line}: {message}")]
    IndexFormat { line: usize, message: String },

    #[error("index version mismatch: expected v1, found {found}")]
    VersionMismatch { found: String },

    #[error("index checksum mismatch: stored {stored}, computed {computed}")]
    ChecksumMismatch { stored: String, computed: String },

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("term {lemma}/{pos} is absent from the reference population")]
    TermAbsent { lemma: String, pos: PosTag },
}

impl Error {
    /// Short machine-readable category, used on CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io(_) => "io",
            Error::Parse { .. } => "parse",
            Error::UnknownDocuments(_) => "unknown-documents",
            Error::Alias(_) => "alias",
            Error::IndexFormat { .. } => "index-format",
            Error::VersionMismatch { .. } => "index-version",
            Error::ChecksumMismatch { .. } => "index-checksum",
            Error::UndefinedInput(_) => "undefined-input",
            Error::Domain(_) => "domain",
            Error::TermAbsent { .. } => "term-absent",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn undefined(message: impl Into<String>) -> Self {
        Error::UndefinedInput(message.into())
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}
