use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("{func}: series did not converge after {terms} terms (last term {last_term:e}, partial sum {partial:e})")]
    NonConvergence {
        func: &'static str,
        terms: usize,
        last_term: f64,
        partial: f64,
    },

    #[error("quadrature failed: estimate {estimate:e}, error estimate {error:e} after {evaluations} subdivisions")]
    Quadrature {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("config error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config { line: Option<usize>, message: String },

    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed batch file: {0}")]
    BatchFormat(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
