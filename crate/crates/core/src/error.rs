use thiserror::Error;

/// Errors raised by the family, polynomial, ladder, quadrature and
/// Schrödinger layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter constraint violated: {0}")]
    ParameterConstraintViolated(String),

    #[error("point {0} lies outside the domain {1}")]
    OutOfDomain(f64, String),

    #[error("degenerate eigenvalue: lambda_{l} == lambda_{j}")]
    DegenerateEigenvalue { l: usize, j: usize },

    #[error("index l = {l} is not below the cutoff {cutoff}")]
    IndexBeyondCutoff { l: usize, cutoff: String },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("lowering operator applied to layer 0")]
    LayerUnderflow,

    #[error("layer mismatch: {0} vs {1}")]
    LayerMismatch(usize, usize),

    #[error("integral did not converge (error estimate {estimate:e} after {levels} levels)")]
    Divergent { estimate: f64, levels: usize },

    #[error("expansion left a non-polynomial remainder: {0}")]
    NonPolynomialRemainder(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("weight is not a power of sigma for this family")]
    NotPowerWeight,

    #[error("degenerate shift: 2m+2k+1 = 0 at m = {0}")]
    DegenerateShift(usize),

    #[error("degenerate tilde eigenvalue: lambda~_{l} == lambda~_{j}")]
    DegenerateTildeEigenvalue { l: usize, j: usize },

    #[error("jet order {have} is below the required {need}")]
    InsufficientOrder { have: usize, need: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
