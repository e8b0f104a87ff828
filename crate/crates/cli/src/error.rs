use std::fmt;

/// Failure classes, each with its own process exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Agent(String),
    Corpus(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Agent(_) => 2,
            CliError::Corpus(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Agent(m) => write!(f, "agent error: {m}"),
            CliError::Corpus(m) => write!(f, "corpus error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn config(e: impl fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

pub fn corpus(e: impl fmt::Display) -> CliError {
    CliError::Corpus(e.to_string())
}
