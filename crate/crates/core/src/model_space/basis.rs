use std::sync::Arc;

use num_complex::Complex64;

use crate::blaschke::{factor, factor_derivative, DiscPoint, PoleConfiguration};
use crate::error::{KbError, Result};
use crate::hardy::{analyze, AnalyticFunction, Evaluator, QuadratureSpec};

/// Orthonormal Malmquist-Walsh basis of `K_B`:
///
/// `e_k(z) = sqrt(1 - |lambda_k|^2) / (1 - conj(lambda_k) z) * prod_{j<k} b_{lambda_j}(z)`.
///
/// Elements are evaluated on demand rather than stored, since a basis of
/// dimension `n` sampled on `M` points would hold `n * M` values.
#[derive(Debug, Clone)]
pub struct MalmquistWalshBasis {
    config: PoleConfiguration,
    spec: QuadratureSpec,
}

/// Values and derivatives of every basis element at one point.
pub(crate) struct PointValues {
    pub values: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
}

/// Evaluates `e_1..e_count` and their derivatives at `z`.
///
/// The partial product `B_{k-1}` and its derivative are carried along with
/// the product rule, and `e_k' = w_k (conj(lambda_k) k^2 B_{k-1} + k B_{k-1}')`
/// with `k = 1 / (1 - conj(lambda_k) z)`.
pub(crate) fn eval_prefix(poles: &[DiscPoint], count: usize, z: Complex64) -> PointValues {
    let one = Complex64::new(1.0, 0.0);
    let mut partial = one;
    let mut partial_deriv = Complex64::new(0.0, 0.0);
    let mut values = Vec::with_capacity(count);
    let mut derivatives = Vec::with_capacity(count);
    for p in &poles[..count] {
        let lambda = p.value();
        let lc = lambda.conj();
        let weight = (1.0 - lambda.norm_sqr()).sqrt();
        let kernel = one / (one - lc * z);
        values.push(partial * kernel * weight);
        derivatives.push((lc * kernel * kernel * partial + kernel * partial_deriv) * weight);
        let b = factor(lambda, z);
        let db = factor_derivative(lambda, z);
        partial_deriv = partial_deriv * b + partial * db;
        partial *= b;
    }
    PointValues {
        values,
        derivatives,
    }
}

impl MalmquistWalshBasis {
    pub fn config(&self) -> &PoleConfiguration {
        &self.config
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.config.n()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `e_{index+1}(z)`.
    pub fn eval(&self, index: usize, z: Complex64) -> Complex64 {
        eval_prefix(self.config.poles(), index + 1, z).values[index]
    }

    /// `e_{index+1}'(z)`, from the analytic product rule.
    pub fn eval_derivative(&self, index: usize, z: Complex64) -> Complex64 {
        eval_prefix(self.config.poles(), index + 1, z).derivatives[index]
    }

    /// `sum_k coords[k] e_{k+1}(z)` and its derivative.
    pub fn eval_combination(&self, coords: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
        let pv = eval_prefix(self.config.poles(), coords.len(), z);
        let value = coords.iter().zip(&pv.values).map(|(c, e)| c * e).sum();
        let deriv = coords.iter().zip(&pv.derivatives).map(|(c, e)| c * e).sum();
        (value, deriv)
    }

    /// `e_{index+1}` analysed on the basis grid, with its exact derivative attached.
    pub fn element(&self, index: usize) -> Result<AnalyticFunction> {
        if index >= self.len() {
            return Err(KbError::InvalidArguments(format!(
                "basis index {index} out of range for dimension {}",
                self.len()
            )));
        }
        let mut coords = vec![Complex64::new(0.0, 0.0); index + 1];
        coords[index] = Complex64::new(1.0, 0.0);
        self.combination(&coords)
    }

    /// `f = sum_k coords[k] e_{k+1}`, analysed on the basis grid.
    pub fn combination(&self, coords: &[Complex64]) -> Result<AnalyticFunction> {
        if coords.is_empty() || coords.len() > self.len() {
            return Err(KbError::InvalidArguments(format!(
                "expected between 1 and {} coordinates, got {}",
                self.len(),
                coords.len()
            )));
        }
        let poles: Arc<Vec<DiscPoint>> = Arc::new(self.config.poles()[..coords.len()].to_vec());
        let owned: Arc<Vec<Complex64>> = Arc::new(coords.to_vec());
        let (p1, c1) = (poles.clone(), owned.clone());
        let value: Evaluator = Arc::new(move |z| {
            let pv = eval_prefix(&p1, c1.len(), z);
            c1.iter().zip(&pv.values).map(|(c, e)| c * e).sum()
        });
        let deriv: Evaluator = Arc::new(move |z| {
            let pv = eval_prefix(&poles, owned.len(), z);
            owned.iter().zip(&pv.derivatives).map(|(c, e)| c * e).sum()
        });
        let rho = 1.0 / self.config.r().max(f64::MIN_POSITIVE);
        Ok(analyze(value, &self.spec)?
            .with_derivative(deriv)
            .with_decay_radius(rho))
    }
}

/// Builds the Malmquist-Walsh basis in the order of `config`'s poles.
///
/// The last element has the widest spectrum on the circle; it is analysed
/// once so that an undersized grid is reported here.
pub fn build_basis(config: &PoleConfiguration, spec: &QuadratureSpec) -> Result<MalmquistWalshBasis> {
    let basis = MalmquistWalshBasis {
        config: config.clone(),
        spec: *spec,
    };
    basis.element(basis.len() - 1)?;
    Ok(basis)
}
