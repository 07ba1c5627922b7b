use thiserror::Error;

/// Everything that can go wrong while building matrices, evaluating an
/// inequality, or running a campaign.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error(
        "symmetry error: max |a_ij - conj(a_ji)| = {deviation:e} exceeds tol_herm = {tolerance:e}"
    )]
    Symmetry { deviation: f64, tolerance: f64 },

    #[error("definiteness error: lambda_min = {lambda_min:e} is not positive")]
    Definiteness { lambda_min: f64 },

    #[error("singular-block error: leading {k}x{k} block has condition estimate {condition:e}")]
    SingularBlock { k: usize, condition: f64 },

    #[error("not-sectorial error: Re A is not positive definite (lambda_min = {lambda_min:e})")]
    NotSectorial { lambda_min: f64 },

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown inequality id `{0}`")]
    UnknownInequality(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
