use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Run(#[from] qentropy::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Csv(_) => 3,
            CliError::Run(
                qentropy::Error::Parameter(_)
                | qentropy::Error::Resource(_)
                | qentropy::Error::Dimension(_),
            ) => 2,
            CliError::Run(_) => 1,
        }
    }
}
