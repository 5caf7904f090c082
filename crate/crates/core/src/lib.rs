//! Norms of the differentiation operator `D: K_B -> H^2` on model spaces
//! `K_B = H^2 ⊖ B H^2` generated by finite Blaschke products, together with
//! the closed-form bounds for `C_{n,r} = sup ‖D‖` and the experiments that
//! check them.
//!
//! ```
//! use kbnorm::{operator_norm, PoleConfiguration};
//!
//! let config = PoleConfiguration::zeros(8).unwrap();
//! let result = operator_norm(&config).unwrap();
//! assert!((result.norm - 7.0).abs() < 1e-9);
//! ```

pub mod blaschke;
pub mod bounds;
pub mod error;
pub mod hardy;
pub mod model_space;
pub mod numerics;
pub mod tolerances;
pub mod verify;

pub use blaschke::{
    blaschke_derivative, blaschke_eval, sup_norm_derivative_on_circle, BlaschkeProduct, DiscPoint,
    PoleConfiguration,
};
pub use bounds::{
    bound_coefficients, bound_report, confluent_derivative_norm_closed_form, convergence_sweep, default_s,
    dyakonov_bracket, embedding_ratio_sweep, extremal_certificate, n1_exact_norm, phi_n_coefficients,
    randomized_configuration_max, BoundCoefficients, BoundReport, DyakonovBracket, EmbeddingRecord,
    EmbeddingSpace, ExtremalCertificate, RandomizedMax,
};
pub use error::{KbError, Result};
pub use hardy::{
    analyze, derivative, inner_product, space_norm, szego_kernel, AnalyticFunction, Evaluator,
    QuadratureSpec, Space,
};
pub use model_space::{
    build_basis, derivative_gram, operator_norm, operator_norm_with, DerivativeGram, HermitianMatrix,
    MalmquistWalshBasis, OperatorNormResult,
};
pub use tolerances::Tolerances;
