use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("unknown label at line {line}: {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("duplicate user id {0:?}")]
    DuplicateUser(String),
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("lexicon: {0}")]
    Lexicon(String),
    #[error("followed celebrities missing from profile map: {}", .0.join(", "))]
    MissingProfiles(Vec<String>),
    #[error("training: {0}")]
    Training(String),
    #[error("feature vector length {got} does not match schema length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("schema mismatch: model {model} vs features {features}")]
    SchemaMismatch { model: String, features: String },
    #[error("cross-validation: {0}")]
    Folds(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
