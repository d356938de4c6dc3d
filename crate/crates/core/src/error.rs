use crate::partition::Partition;
use thiserror::Error;

/// Errors produced by the clustering pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Domain(String),

    /// An iterative procedure hit its iteration cap. The last iterate is kept
    /// so callers can inspect or fall back to it.
    #[error("{what} did not converge within {iterations} iterations")]
    IterationCap {
        what: &'static str,
        iterations: usize,
        last: Option<Box<Partition>>,
    },

    /// The γ_min search did not terminate; `best` is the running estimate.
    #[error("gamma_min estimation did not converge after {iterations} iterations (best estimate {best})")]
    GammaMinNotConverged { iterations: usize, best: f64 },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
