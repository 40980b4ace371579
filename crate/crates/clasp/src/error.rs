use clasp_core::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    /// Not certified, or a reproduced claim failed.
    MathFailure = 1,
    /// Bad arguments, unreadable files, malformed input.
    Usage = 2,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(
                Error::DegenerateForm
                | Error::PreconditionViolation(_)
                | Error::NoLinearBound { .. }
                | Error::HypothesisViolation(_)
                | Error::FamilyNotCertifying(_)
                | Error::ReplayFailed(_)
                | Error::InvalidBasis { .. },
            ) => ExitCode::MathFailure,
            _ => ExitCode::Usage,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
