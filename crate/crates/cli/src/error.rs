use thiserror::Error;

/// Failures of a CLI command, each with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("invalid state: {0}")]
    InvalidState(gaussdist::Error),
    #[error("exact metrics need builder-form states; state {0} is given as explicit moments")]
    ExplicitState(usize),
    #[error("{0}")]
    Cutoff(gaussdist::Error),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Numerical(gaussdist::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::Numerical(_) => 1,
            CliError::Parse(_) => 2,
            CliError::InvalidState(_) => 3,
            CliError::ExplicitState(_) => 4,
            CliError::Cutoff(_) => 5,
            CliError::Io(_) => 6,
        }
    }
}

impl From<gaussdist::Error> for CliError {
    fn from(e: gaussdist::Error) -> Self {
        use gaussdist::Error as E;
        match e {
            E::Parse(msg) => CliError::Parse(msg),
            E::CutoffTooSmall { .. } | E::DimCapExceeded { .. } => CliError::Cutoff(e),
            E::ConvergenceFailure(_) | E::NotPsd(_) | E::SigmaNotPd | E::OverlapOutOfRange(_) => CliError::Numerical(e),
            E::CertificationFailure { .. } => CliError::Verification(e.to_string()),
            other => CliError::InvalidState(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
