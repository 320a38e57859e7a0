use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An index or argument exceeds the configured evaluation cap.
    #[error("range error: {0}")]
    Range(String),
    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature did not converge{level}: partial value {value:e} with error estimate {error:e}")]
    Convergence {
        level: LevelTag,
        value: f64,
        error: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    /// Tags a convergence failure with the daughter Landau level it came from.
    pub(crate) fn at_level(self, n: u32) -> Self {
        match self {
            Error::Convergence { value, error, .. } => Error::Convergence {
                level: LevelTag(Some(n)),
                value,
                error,
            },
            other => other,
        }
    }
}

/// Daughter Landau level attached to a convergence error, if known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LevelTag(pub Option<u32>);

impl fmt::Display for LevelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(n) => write!(f, " at daughter level n = {n}"),
            None => Ok(()),
        }
    }
}
