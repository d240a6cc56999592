use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{origin}:{line}: {message}")]
    Parse {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("{origin}: character {ch:?} is listed more than once")]
    DuplicateEntry { origin: String, ch: char },

    #[error("{origin}: character {ch:?} (U+{code:04X}) is outside the {script} block", code = *.ch as u32)]
    OutsideBlock {
        origin: String,
        ch: char,
        script: crate::Script,
    },

    #[error("document {0} contains no mapped letters")]
    EmptyDocument(String),

    #[error("unknown script name {0:?}")]
    UnknownScript(String),

    #[error("{path}: file is not valid UTF-8")]
    NotUtf8 { path: PathBuf },

    #[error("character {0:?} has no mapping entry")]
    NoMapping(char),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("need at least {needed} documents, got {got}")]
    TooFewDocuments { needed: usize, got: usize },

    #[error("partition has {k} clusters, fewer than the target {target}")]
    TooFewClusters { k: usize, target: usize },

    #[error("no ground-truth label for document {0}")]
    MissingTruth(String),

    #[error("duplicate document id {0}")]
    DuplicateDocument(String),

    #[error("empty input: {0}")]
    Empty(&'static str),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for input problems the caller can fix (bad data or parameters),
    /// false for operating-system failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io { .. })
    }
}
