use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KbError {
    #[error("point {re}+{im}i is not inside the open unit disc")]
    OutsideDisc { re: f64, im: f64 },

    #[error("pole configuration must contain at least one pole")]
    EmptyConfiguration,

    #[error("evaluation hit a pole: |1 - conj(lambda) z| = {denominator:e}")]
    PoleAtEvaluation { denominator: f64 },

    #[error("sample count {0} must be a power of two and at least 64")]
    InvalidSampleCount(usize),

    #[error("negative-frequency bin {bin} has magnitude {magnitude:e} above tolerance {tolerance:e}")]
    AnalyticityViolation {
        bin: usize,
        magnitude: f64,
        tolerance: f64,
    },

    #[error("eigen solver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
}

pub type Result<T> = std::result::Result<T, KbError>;
