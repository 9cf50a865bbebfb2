use thiserror::Error;

/// Errors raised while building or analysing algebras and homogeneous spaces.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("Jacobi identity violated: residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    JacobiViolation { residual: f64, tol: f64 },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not a derivation: residual {residual:.3e}")]
    NotADerivation { residual: f64 },

    #[error("invalid index partition: {0}")]
    InvalidPartition(String),

    #[error(
        "decomposition is not reductive: [k,k] residual {subalgebra_residual:.3e}, \
         [k,m] residual {reductive_residual:.3e}"
    )]
    NotReductive {
        subalgebra_residual: f64,
        reductive_residual: f64,
    },

    #[error("metric is not symmetric positive definite")]
    MetricNotPositiveDefinite,

    #[error("metric is not ad(k)-invariant: residual {residual:.3e}")]
    MetricNotInvariant { residual: f64 },

    #[error("algebra is unimodular; the canonical foliation is undefined")]
    UnimodularInput,

    #[error("space is not cyclic: cyclic-sum residual {residual:.3e}")]
    NotCyclic { residual: f64 },

    #[error("plane is degenerate: |X|^2|Y|^2 - <X,Y>^2 = {gram:.3e}")]
    DegeneratePlane { gram: f64 },

    #[error("slot antisymmetry violated: residual {residual:.3e}")]
    SlotSymmetryViolation { residual: f64 },

    #[error("Killing form is degenerate on m")]
    DegenerateKillingForm,

    #[error("Killing form on block {block} does not have the declared sign {sign}")]
    BlockSignMismatch { block: usize, sign: i8 },

    #[error("invalid grading: {0}")]
    InvalidGrading(String),

    #[error("endomorphism does not have order exactly 3: residual {residual:.3e}")]
    NotOrder3 { residual: f64 },

    #[error("endomorphism is not an automorphism: residual {residual:.3e}")]
    NotAutomorphism { residual: f64 },

    #[error("no commuting eigenvector pair exists")]
    NoWitness,

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, GeoError>;
