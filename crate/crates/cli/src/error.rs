use thiserror::Error;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_NOT_DECIDED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Output(_) => EXIT_INVALID,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
        }
    }
}

impl From<brunnian::Error> for CliError {
    fn from(e: brunnian::Error) -> Self {
        match e {
            brunnian::Error::Infeasible(msg) => CliError::Infeasible(msg),
            other => CliError::Invalid(other.to_string()),
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
