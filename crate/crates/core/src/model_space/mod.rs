//! Model spaces `K_B = H^2 ⊖ B H^2`, their Malmquist-Walsh basis, and the
//! norm of differentiation `D: K_B -> H^2`.
//!
//! With an orthonormal basis `e_1..e_n`, `‖D‖^2` is the largest eigenvalue
//! of the Hermitian matrix `G[j][k] = (e_{k+1}', e_{j+1}')`.

mod basis;
pub mod confluent;
mod eigen;
mod gram;

use serde::Serialize;

pub use basis::{build_basis, MalmquistWalshBasis};
pub use confluent::{
    structured_derivative_gram, test_function, test_function_coordinates, verify_derivative_expansion,
    ExpansionResiduals,
};
pub use eigen::{largest_eigenpair, TopEigenpair};
pub use gram::{derivative_gram, element_gram, DerivativeGram, HermitianMatrix};

use crate::blaschke::PoleConfiguration;
use crate::error::Result;
use crate::hardy::QuadratureSpec;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorNormResult {
    /// `‖D‖_{K_B -> H^2}`.
    pub norm: f64,
    pub lambda_max: f64,
    pub iterations: usize,
    pub residual: f64,
    /// Gram dimension `n`.
    pub dimension: usize,
    pub sample_count: usize,
}

/// Eigen-solver cap on inverse-iteration sweeps for a Gram matrix of size `n`.
pub fn iteration_cap(n: usize) -> usize {
    10 * n
}

/// `‖D‖_{K_B -> H^2}` with the default sampling policy.
pub fn operator_norm(config: &PoleConfiguration) -> Result<OperatorNormResult> {
    operator_norm_with(config, &QuadratureSpec::for_model_space(config.n(), config.r()))
}

pub fn operator_norm_with(config: &PoleConfiguration, spec: &QuadratureSpec) -> Result<OperatorNormResult> {
    let basis = build_basis(config, spec)?;
    let gram = derivative_gram(&basis);
    norm_from_gram(&gram.matrix, spec.sample_count())
}

/// `sqrt(lambda_max)` of an already assembled derivative Gram matrix.
pub fn norm_from_gram(matrix: &HermitianMatrix, sample_count: usize) -> Result<OperatorNormResult> {
    let n = matrix.dim();
    let top = largest_eigenpair(matrix, Tolerances::DEFAULT.eigen_residual, iteration_cap(n))?;
    Ok(OperatorNormResult {
        norm: top.value.max(0.0).sqrt(),
        lambda_max: top.value,
        iterations: top.iterations,
        residual: top.residual,
        dimension: n,
        sample_count,
    })
}
