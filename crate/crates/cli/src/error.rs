use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("numeric failure: {0}")]
    Numeric(#[from] ddpopt_core::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("output: {0}")]
    Output(String),

    #[error("{0} check(s) outside tolerance")]
    Tolerance(usize),
}

impl CliError {
    /// Process exit code: 1 tolerance violation, 2 config error, 3 numeric or I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Tolerance(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) | CliError::Output(_) => 3,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
