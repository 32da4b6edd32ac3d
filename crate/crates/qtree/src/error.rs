use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Convergence(String),
}

impl CliError {
    /// 2 usage, 3 input data, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) | CliError::Io { .. } => 3,
            CliError::Convergence(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<qtree_core::Error> for CliError {
    fn from(e: qtree_core::Error) -> Self {
        use qtree_core::Error as E;
        match e {
            E::InvalidRange(_) | E::AmbiguousInput(_) => CliError::Usage(e.to_string()),
            E::ConvergenceFailure { .. } | E::ClusterAmbiguity(_) => {
                CliError::Convergence(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
