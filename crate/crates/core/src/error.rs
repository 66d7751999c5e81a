use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must have unit norm (got norm {norm})")]
    NotUnit { norm: f64 },

    #[error("degenerate plane: Gram determinant {gram} is below {threshold}")]
    DegeneratePlane { gram: f64, threshold: f64 },

    #[error("focal point: the flow blows up at t = {radius}")]
    FocalPoint { radius: f64 },

    #[error("focal point in branch {branch}: the flow blows up at t = {radius}")]
    BranchFocalPoint { branch: usize, radius: f64 },

    #[error(
        "angle {alpha} is on the boundary of the generic stratum (alpha must lie in (0, pi/2))"
    )]
    BoundaryAngle { alpha: f64 },

    #[error(
        "angle {alpha} is excluded: cos(alpha) = {cos_alpha} is within tolerance of {excluded}"
    )]
    ExcludedAngle {
        alpha: f64,
        cos_alpha: f64,
        excluded: f64,
    },

    #[error("power sums are not those of a real multiset: {reason}")]
    InconsistentPowerSums { reason: String },

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("invalid branch: {0}")]
    InvalidBranch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}
