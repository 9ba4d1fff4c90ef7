use thiserror::Error;

/// Errors produced by the simulator and the analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative numerical method failed or produced a degenerate value.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Buffers or parameters disagree in size.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// The request is valid but too large to evaluate exhaustively.
    #[error("infeasible request: {0}")]
    Infeasible(String),
    /// An invalid or inconsistent configuration.
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
