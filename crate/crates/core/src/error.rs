use thiserror::Error;

pub type Result<T, E = CurvError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvError {
    #[error("dimension {n} is below the minimum of 4")]
    DimensionTooSmall { n: usize },

    #[error("dimension {n} outside the supported range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {n} must be {requirement}")]
    DimensionParity { n: usize, requirement: &'static str },

    #[error("input contains non-finite entries")]
    NonFinite,

    #[error("{what} violated: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")]
    SymmetryViolation {
        what: &'static str,
        defect: f64,
        tolerance: f64,
    },

    #[error("frame is not orthonormal: Gram defect {defect:.3e}")]
    NotOrthonormal { defect: f64 },

    #[error("invalid complex structure: {reason} (defect {defect:.3e})")]
    InvalidComplexStructure { reason: &'static str, defect: f64 },

    #[error("invalid quaternion triple: {reason} (defect {defect:.3e})")]
    InvalidQuaternionTriple { reason: &'static str, defect: f64 },

    #[error("vector constraint violated: {reason} (defect {defect:.3e})")]
    ConstraintViolation { reason: &'static str, defect: f64 },

    #[error("subspace has no basis elements")]
    EmptySubspace,

    #[error("tensor is not hyper-Kähler for the supplied triple: residual {residual:.3e}")]
    NotHyperKahler { residual: f64 },

    #[error("requested time {t} is at or past the blow-up time {blowup}")]
    PastBlowup { t: f64, blowup: f64 },

    #[error("step size underflow at t = {t} (dt = {dt:.3e})")]
    StepUnderflow { t: f64, dt: f64 },

    #[error("initial tensor lies outside the nonnegative isotropic cone (min {min_iso:.3e})")]
    OutsideCone { min_iso: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("format error: {0}")]
    Format(String),
}
