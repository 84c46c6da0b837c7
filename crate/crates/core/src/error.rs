use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error)]
pub enum WishartError {
    #[error("matrix is not symmetric: max asymmetry {max_asym:e} exceeds {tol:e}")]
    NotSymmetric { max_asym: f64, tol: f64 },

    #[error(
        "matrix is not positive semidefinite: eigenvalue {eigenvalue:e} below floor -{floor:e}"
    )]
    NotPsd { eigenvalue: f64, floor: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular matrix in {context}")]
    Singular { context: String },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside the transform domain: {0}")]
    OutsideDomain(String),

    #[error("sampling refused: existence verdict is {status} ({rule})")]
    SamplingRefused { status: String, rule: String },
}

pub type Result<T> = std::result::Result<T, WishartError>;
