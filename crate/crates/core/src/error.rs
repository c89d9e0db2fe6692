use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An internal identity that must hold did not (a bug signal).
    #[error("consistency check failed: {0}")]
    Consistency(String),
    /// A configured search or extension cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    /// A Hecke translate left the modelled span of forms.
    #[error("interpolation residual at weight {weight}: {detail}")]
    InterpolationResidual { weight: u32, detail: String },
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
    pub fn cap(msg: impl Into<String>) -> Self {
        Error::ResourceCap(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
