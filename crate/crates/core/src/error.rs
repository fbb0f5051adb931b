use thiserror::Error;

/// Everything that can go wrong in the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    #[error("division by zero at a coefficient pole: {0}")]
    Pole(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("interpolation system singular after {attempts} point sets")]
    SingularSystem { attempts: usize },
    #[error("expansion residual nonzero at check point ({0})")]
    ResidualNonzero(String),
    #[error("operator left the dominance ideal: D m_{from} has a term m_{to}")]
    TriangularityViolation { from: String, to: String },
    #[error("diagonal entry of m_{lambda} differs from the eigenvalue")]
    DiagonalMismatch { lambda: String },
    #[error("eigenvalue collision between {lambda} and {mu}")]
    EigenvalueCollision { lambda: String, mu: String },
    #[error("{product} is not a perfect square in the Gaussian rationals")]
    NotSquare { product: String },
    #[error("vanishing factor {0} (non-generic parameters)")]
    VanishingFactor(String),
    #[error("parameter condition violated: {0}")]
    ConditionViolated(String),
    #[error("outside the analytic parameter domain: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ill-conditioned float system: {0}")]
    IllConditioned(String),
}

pub type Result<T> = std::result::Result<T, MathError>;
