use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown basis kind `{0}`")]
    UnknownBasis(String),

    #[error("newton basis requires a node list")]
    MissingNodes,

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("basis supplies recurrence data up to degree {available}, degree {requested} requested")]
    BasisTooShort { requested: usize, available: usize },

    #[error("expected a {expected} basis")]
    WrongBasis { expected: &'static str },

    #[error("degree {0} is below the minimum of 2")]
    DegreeTooSmall(usize),

    #[error("leading coefficient P_k is zero")]
    ZeroLeadingCoefficient,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("pencil is singular (max normalized |det| {max_ratio:.3e} over {trials} samples)")]
    SingularPencil { trials: usize, max_ratio: f64 },

    #[error("matrix polynomial is singular")]
    SingularPolynomial,

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("vector is not Kronecker structured (relative mismatch {mismatch:.3e})")]
    InconsistentEigenvector { mismatch: f64 },

    #[error("recovered left eigenvector vanishes (relative norm {norm:.3e})")]
    VanishingLeftVector { norm: f64 },

    #[error("size guard exceeded: n = {n}, k = {k} (limit n <= 6, k <= 8)")]
    SizeGuard { n: usize, k: usize },

    #[error("ansatz vector is zero")]
    ZeroAnsatzVector,

    #[error("polynomial has degree 0, no roots")]
    ConstantPolynomial,

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
