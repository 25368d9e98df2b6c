use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("ambient graph is not regular; the path-count coefficient formula needs constant degree")]
    NotRegular,

    #[error("assembled operator is not symmetric: defect {defect:e} exceeds tolerance {tolerance:e}")]
    SymmetryDefect { defect: f64, tolerance: f64 },

    #[error("eigensolver did not converge (matrix fingerprint {fingerprint:016x}, n = {n})")]
    NoConvergence { fingerprint: u64, n: usize },

    #[error("spectrum has no eigenvectors")]
    MissingEigenvectors,

    #[error("quadrature grid too coarse: need N >= {required}, got {actual}")]
    Certificate { required: usize, actual: usize },

    #[error("root finding did not converge for k = {k}")]
    RootFinding { k: usize },

    #[error("domain sizes must be strictly increasing to form an exhaustion")]
    NotNested,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Numerical failures, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SymmetryDefect { .. } | Error::NoConvergence { .. } | Error::RootFinding { .. }
        )
    }
}
