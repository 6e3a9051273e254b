use std::path::PathBuf;

use fuzzylie::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: CoreError,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Attaches the file a core error came from.
    pub fn in_file(path: impl Into<PathBuf>, source: CoreError) -> Self {
        let path = path.into();
        match source {
            CoreError::Parse { line, message } => CliError::Parse { path, line, message },
            source => CliError::File { path, source },
        }
    }

    /// 3 when a resource cap stopped the computation, otherwise 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::ResourceCap { .. }) | CliError::File { source: CoreError::ResourceCap { .. }, .. } => 3,
            _ => 2,
        }
    }
}
