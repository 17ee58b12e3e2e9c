use thiserror::Error;

/// Errors produced by curve algebra, protocol solvers and the simulator.
#[derive(Debug, Error)]
pub enum DmtError {
    #[error("invalid antenna configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("oracle refused: {0}")]
    OracleScale(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("estimation error: {0}")]
    Estimation(String),
}

pub type Result<T> = std::result::Result<T, DmtError>;
