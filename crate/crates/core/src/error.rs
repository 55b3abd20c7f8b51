use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the model, the solvers and the file interfaces.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a model invariant.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two series that must share a grid do not, or a requested time is off-grid.
    #[error("grid error: {0}")]
    Grid(String),

    /// A cumulative-emissions goal cannot be met by the requested pathway family.
    #[error("infeasible goal: {0}")]
    Infeasible(String),

    /// An iterative solver did not converge.
    #[error("solver failure: {0}")]
    Solver(String),

    /// Regression inputs do not identify the parameters.
    #[error("rank-deficient regression: {0}")]
    RankDeficient(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Config parsed but a value violates an invariant; `key` names the field.
    #[error("invalid config value for `{key}`: {message}")]
    Validation { key: String, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag used in the CLI error summary.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Grid(_) => "grid",
            Error::Infeasible(_) => "infeasible",
            Error::Solver(_) => "solver",
            Error::RankDeficient(_) => "rank_deficient",
            Error::Parse(_) => "parse",
            Error::Validation { .. } => "validation",
            Error::Io { .. } => "io",
            Error::Csv(_) => "csv",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
