use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported problem: {0}")]
    UnsupportedProblem(String),

    #[error("singular system: zero pivot at row {row}")]
    SingularSystem { row: usize },

    #[error("invalid diffusion: artificial diffusion function returned {value} at Pe = {peclet}")]
    InvalidDiffusion { peclet: f64, value: f64 },

    #[error("no convergence after {subintervals} subintervals (last change {last_change:e})")]
    NoConvergence { subintervals: usize, last_change: f64 },
}

impl Error {
    /// True for failures of the numerics themselves rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::SingularSystem { .. } | Error::NoConvergence { .. })
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
