//! Numerical tolerances shared by every module.
//!
//! All thresholds live in [`Tolerances`] so that tests and the `verify`
//! suite compare against the same numbers the library uses internally.

/// Central tolerance record. `Tolerances::DEFAULT` is what the library uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|1 - conj(lambda) z|` below this is treated as evaluation at a pole.
    pub pole_denominator: f64,
    /// Slack allowed on `|z| <= 1` for circle evaluation.
    pub circle_slack: f64,
    /// Negative-frequency bins above `analyticity * max(1, ||f||_2)` reject an analysis.
    pub analyticity: f64,
    /// Relative eigen-residual `||G v - lambda v|| / max(lambda, 1)`.
    pub eigen_residual: f64,
    /// Slack added to both sides of inequality checks.
    pub inequality_slack: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        pole_denominator: 1e-300,
        circle_slack: 1e-9,
        analyticity: 1e-9,
        eigen_residual: 1e-10,
        inequality_slack: 1e-8,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
