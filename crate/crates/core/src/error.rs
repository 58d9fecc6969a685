use thiserror::Error;

/// Failures raised by the library. Numeric payloads are widened to `f64`
/// regardless of the working precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("vector norm {0:e} is below the zero threshold")]
    ZeroVector(f64),

    #[error("pivot coordinate modulus {0:e} is below the zero threshold")]
    ZeroPivot(f64),

    #[error("inconsistent distance profile at coordinate {index}: modulus residual {residual:e}")]
    InconsistentProfile { index: usize, residual: f64 },

    #[error("not in D: coordinate {index} has modulus {modulus:e}; the resolving set cannot separate projections with vanishing coordinates")]
    NotInDomain { index: usize, modulus: f64 },

    #[error("matrix columns are not orthonormal (max deviation {0:e})")]
    NotAnIsometry(f64),

    #[error("map does not preserve transition probabilities: {0}")]
    NotASymmetry(String),

    #[error("image leaves the span of the frame (Parseval residual {0:e})")]
    Parseval(f64),

    #[error("phase relation violated at pair {index}: residual {residual:e}")]
    PhaseRelation { index: usize, residual: f64 },

    #[error("verification failed: max gap residual {max_gap_residual:e}, contradiction fixture residual {fixture_residual:e}")]
    Verification {
        max_gap_residual: f64,
        fixture_residual: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dim(expected: usize, got: usize) -> Self {
        Error::Dimension(format!("expected {expected}, got {got}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
