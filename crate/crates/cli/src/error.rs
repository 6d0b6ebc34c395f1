use thiserror::Error;

/// Failure of a CLI command, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical error at {point}: {message}")]
    Numerical { point: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical { .. } => 3,
            CliError::Io(_) => 1,
        }
    }

    /// Classifies a library error raised while evaluating `point`.
    pub fn at(point: impl Into<String>, err: relaycov::Error) -> Self {
        if err.is_numerical() {
            CliError::Numerical {
                point: point.into(),
                message: err.to_string(),
            }
        } else {
            CliError::Config(format!("{}: {err}", point.into()))
        }
    }
}

impl From<relaycov::Error> for CliError {
    fn from(err: relaycov::Error) -> Self {
        if err.is_numerical() {
            CliError::Numerical {
                point: "base parameters".into(),
                message: err.to_string(),
            }
        } else {
            CliError::Config(err.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
