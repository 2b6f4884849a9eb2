use thiserror::Error;

/// Errors raised by the continued-fraction engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("domain error: {0}")]
    Domain(String),
    /// A finite or certified stream ran out before the requested digit.
    #[error("digit stream exhausted: only {available} digits available")]
    Exhausted { available: usize },
    /// A component evaluation needed more source digits than the stream has.
    #[error("digit stream too short: maximum achievable depth is {max_depth}")]
    DepthExhausted { max_depth: usize },
    /// Enclosures could not be separated at the deepest evaluation allowed.
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CfError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CfError::Domain(msg.into())
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        CfError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }

    /// True for errors that deeper evaluation or more sampling bits would fix.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            CfError::Exhausted { .. } | CfError::DepthExhausted { .. } | CfError::Precision(_)
        )
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        CfError::Parse(msg.into())
    }
}

pub type Result<T, E = CfError> = std::result::Result<T, E>;
