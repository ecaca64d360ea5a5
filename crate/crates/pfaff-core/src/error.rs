use thiserror::Error;

/// Errors shared by the symbolic and numeric layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("variable spaces do not match: expected ({expected}), found ({found})")]
    SpaceMismatch { expected: String, found: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("polynomial degree cap exceeded: result degree {attempted} > cap {cap}")]
    DegreeCap { cap: u32, attempted: u32 },

    #[error("degenerate input: {0}")]
    DegenerateForm(String),

    #[error("field {field} is not tangent to the distribution: omega({field}) = {value}")]
    TangencyViolation { field: &'static str, value: String },

    #[error("curve is not admissible: residual = {residual}")]
    NotAdmissible { residual: String },

    #[error("plan links do not chain at link {link}")]
    BrokenChain { link: usize },

    #[error("cube-root hint required: exact planning to z = {z} needs t1 with t1^3 = 3*z")]
    HintRequired { z: String },

    #[error("invalid cube-root hint: {hint}^3 = {cube} but 3*z = {expected}")]
    InvalidHint {
        hint: String,
        cube: String,
        expected: String,
    },

    #[error("target has x1 = y1 = 0: construction not applicable, use the three-link planner")]
    DelegatesRequired,

    #[error("generating function depends on excluded variable {variable}")]
    InvalidGeneratingFunction { variable: String },

    #[error("degenerate dilation: alpha must be nonzero")]
    DegenerateDilation,

    #[error("coefficient is not real: {0}")]
    NonRealCoefficient(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("singular point at step {step}: covectors rank-deficient at {point:?}")]
    SingularPoint {
        step: usize,
        point: Vec<f64>,
        partial: Vec<Vec<f64>>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
