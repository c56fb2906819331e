use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("degree mismatch: |mu| = {mu}, |nu| = {nu}")]
    DegreeMismatch { mu: u64, nu: u64 },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exceeded: estimated {estimate} sequences, limit {limit}")]
    BudgetExceeded { estimate: f64, limit: f64 },
    #[error("{0} lies on a wall")]
    WallPoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
