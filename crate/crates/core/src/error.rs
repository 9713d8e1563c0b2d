use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The argument sits on (or within tolerance of) a pole of the function.
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    /// The argument is outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The argument lies on the singular set of the double zeta function.
    #[error("singular point: {0}")]
    Singularity(String),

    /// The requested tolerance cannot be met at the available precision.
    #[error("precision exhausted: {0}")]
    Precision(String),

    /// A contour or line integral failed to converge to the target tolerance.
    #[error("quadrature did not converge: estimate {estimate:e} exceeds tolerance {tolerance:e} ({context})")]
    Quadrature {
        estimate: f64,
        tolerance: f64,
        context: String,
    },

    #[error("invalid precision context: {0}")]
    InvalidContext(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// Reading or writing an output file failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn pole(function: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole {
            function,
            at: at.to_string(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Pole { .. }
            | Error::Domain(_)
            | Error::Singularity(_)
            | Error::InvalidContext(_)
            | Error::InvalidParams(_)
            | Error::InsufficientData { .. }
            | Error::Io(_) => 2,
            Error::Precision(_) | Error::Quadrature { .. } => 3,
        }
    }

    /// Stable machine-readable tag for JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "pole",
            Error::Domain(_) => "domain",
            Error::Singularity(_) => "singularity",
            Error::Precision(_) => "precision",
            Error::Quadrature { .. } => "quadrature",
            Error::InvalidContext(_) => "invalid_context",
            Error::InvalidParams(_) => "invalid_params",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
