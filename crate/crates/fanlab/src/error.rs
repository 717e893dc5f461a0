use thiserror::Error;

/// Failures of a command, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Domain(fanlab_core::Error),
    #[error("{0}")]
    Predicate(String),
}

impl From<fanlab_core::Error> for CliError {
    fn from(e: fanlab_core::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    /// 1 for domain preconditions and failed predicates, 2 for I/O and schema failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) | CliError::Schema(_) => 2,
            CliError::Domain(_) | CliError::Predicate(_) => 1,
        }
    }
}
