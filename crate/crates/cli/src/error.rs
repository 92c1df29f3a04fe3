use thiserror::Error;

/// Errors that stop a command before it produces a report. All of them map to
/// exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed tensor file: {0}")]
    Malformed(String),

    #[error(transparent)]
    Algebra(#[from] dforms::Error),

    #[error("{0}")]
    Usage(String),
}
