use thiserror::Error;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("unknown problem '{0}'")]
    UnknownProblem(String),

    #[error("incomparable configs: {0}")]
    IncomparableConfigs(String),

    #[error(transparent)]
    Core(#[from] convdiff::Error),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl LabError {
    /// Process exit status: 2 for bad input, 3 for numerical failure, 1 for
    /// everything else (mostly i/o).
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Usage(_) | LabError::UnknownProblem(_) | LabError::IncomparableConfigs(_) => 2,
            LabError::Core(e) if e.is_numerical() => 3,
            LabError::Core(_) => 2,
            LabError::Io(_) | LabError::Csv(_) | LabError::Json(_) => 1,
        }
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> LabError {
    LabError::Usage(msg.into())
}
