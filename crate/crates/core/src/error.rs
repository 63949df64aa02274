use thiserror::Error;

/// Errors produced by the geometry, estimation and experiment layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure could not reach the required accuracy.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// An experiment descriptor names an unknown estimator or is malformed.
    #[error("config error: {0}")]
    Config(String),
    /// Input data (fixtures, JSON documents) could not be read or parsed.
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
