use thiserror::Error;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("certificate has a negative dual value")]
    NegativeDual,
    #[error("{label}: infeasible rows {rows:?} (largest violation {max_violation:.3e})")]
    Infeasible { label: String, rows: Vec<usize>, max_violation: f64 },
    #[error("{label}: certified bound {bound:.6} is below the claim {claimed:.6}")]
    Shortfall { label: String, bound: f64, claimed: f64 },
    #[error("simplex failed: {0}")]
    Simplex(String),
    #[error("premise not met: {0}")]
    Premise(String),
    #[error(transparent)]
    Core(#[from] sumfree_core::Error),
}

pub type Result<T> = std::result::Result<T, LpError>;
