use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: byte 0x{byte:02x} is not valid {encoding}")]
    Decode {
        path: PathBuf,
        line: usize,
        byte: u8,
        encoding: &'static str,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Validation(String),

    #[error("vocabulary is empty after document-frequency pruning")]
    EmptyVocabulary,

    #[error("representation requires the {0} component, which was not fitted")]
    MissingComponent(&'static str),

    #[error("feature {index} is negative ({value}); apply the nonnegative shift before multinomial training")]
    NegativeFeature { index: usize, value: f64 },

    #[error("{path}: not a model file (bad magic header)")]
    BadMagic { path: PathBuf },

    #[error("{path}: unsupported format version {found} (this build reads version {expected})")]
    VersionMismatch {
        path: PathBuf,
        found: u32,
        expected: u32,
    },

    #[error("{path}: file holds a {found} artifact, expected {expected}")]
    WrongArtifact {
        path: PathBuf,
        found: &'static str,
        expected: &'static str,
    },

    #[error("objective became non-finite during optimization: {0}")]
    NonFinite(String),

    #[error("fold {fold} failed: {source}")]
    FoldFailed {
        fold: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// Process exit code for the CLI: data and parse problems map to 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
