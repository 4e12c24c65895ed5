use thiserror::Error;

use crate::fockla::Subsystem;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("subsystem {0} is not part of the basis")]
    UnknownSubsystem(Subsystem),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigenvalue {value:e} is below -{tolerance:e}; the state construction is defective")]
    NegativeEigenvalue { value: f64, tolerance: f64 },

    #[error("eigensolver did not converge after {0} iterations")]
    EigenNoConvergence(usize),

    #[error("truncation overflow at alpha = {alpha}: N = {required} exceeds the cap {cap}")]
    TruncationOverflow { alpha: f64, required: usize, cap: usize },

    #[error("basis has no two-level Alice factor to measure")]
    NoQubitFactor,

    #[error("expected a bipartite basis, found {0} factor(s)")]
    NotBipartite(usize),

    #[error(
        "optimizer did not converge after {evaluations} evaluations \
         (best J = {best_j}, theta = {theta}, phi = {phi})"
    )]
    OptimizerNonConvergence { evaluations: usize, best_j: f64, theta: f64, phi: f64 },

    #[error("Koashi-Winter routes disagree: {via_rob} (via Rob) vs {via_antirob} (via AntiRob)")]
    RouteMismatch { via_rob: f64, via_antirob: f64 },

    #[error("{quantity} = {value:e} is negative beyond the clamp tolerance")]
    NegativeQuantity { quantity: &'static str, value: f64 },

    #[error("conservation law violated: I_AR + I_AAntiR = {sum}, expected {expected}")]
    Conservation { sum: f64, expected: f64 },

    #[error("alpha = {alpha}: {source}")]
    AtPoint {
        alpha: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at(alpha: f64, source: Error) -> Self {
        Error::AtPoint { alpha, source: Box::new(source) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
