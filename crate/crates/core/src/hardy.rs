//! Circle quadrature and norms on the Hardy space `H^2` of the unit disc.
//!
//! The normalized Lebesgue measure `m` on the circle is used everywhere, so
//! `||z^k||_2 = 1` and `||f||_2^2 = sum |f^(k)|^2`. The inner product is
//! linear in the first argument and conjugate-linear in the second.
//!
//! A function is discretised by sampling it at the `M`-th roots of unity.
//! Its Taylor coefficients are the DFT of those samples divided by `M`;
//! for a function analytic in `|z| < rho` the aliasing error on each
//! coefficient is of order `rho^{-M}`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::blaschke::DiscPoint;
use crate::error::{KbError, Result};
use crate::numerics::{circle_grid, next_power_of_two, pairwise_sum, pairwise_sum_complex};
use crate::tolerances::Tolerances;

/// A complex function on the closed unit disc.
pub type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Number of circle samples and the analyticity tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    sample_count: usize,
    tolerance: f64,
}

impl QuadratureSpec {
    pub const MIN_SAMPLES: usize = 64;
    /// Floor of the model-space sampling policy.
    pub const POLICY_FLOOR: usize = 4096;

    pub fn new(sample_count: usize, tolerance: f64) -> Result<Self> {
        if sample_count < Self::MIN_SAMPLES || !sample_count.is_power_of_two() {
            return Err(KbError::InvalidSampleCount(sample_count));
        }
        if !(tolerance > 0.0) {
            return Err(KbError::InvalidArguments(format!(
                "quadrature tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(Self {
            sample_count,
            tolerance,
        })
    }

    pub fn with_samples(sample_count: usize) -> Result<Self> {
        Self::new(sample_count, Tolerances::DEFAULT.analyticity)
    }

    /// Sampling policy for functions in a model space with `n` poles of
    /// modulus at most `r`: the smallest power of two that is at least
    /// `max(4096, 8 n / (1 - r))`.
    ///
    /// On the circle `B` winds with angular speed at most `n (1+r)/(1-r)`,
    /// so products of basis derivatives are trigonometric polynomials of
    /// that order up to a tail decaying like `r^k`. The policy keeps
    /// `M / 2` above twice that order.
    pub fn for_model_space(n: usize, r: f64) -> Self {
        let target = (8.0 * n as f64 / (1.0 - r)).max(Self::POLICY_FLOOR as f64);
        Self {
            sample_count: next_power_of_two(target),
            tolerance: Tolerances::DEFAULT.analyticity,
        }
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn grid(&self) -> Vec<Complex64> {
        circle_grid(self.sample_count)
    }
}

/// Which norm [`space_norm`] computes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Space {
    H2,
    /// Mean of `|f|` over the circle.
    H1,
    /// `(sum (k+1)^{2s} |f^(k)|^2)^{1/2}`.
    Besov(f64),
    /// `sum |f^(k)|`.
    Wiener,
}

/// A disc-analytic function with its circle samples and Taylor coefficients.
#[derive(Clone)]
pub struct AnalyticFunction {
    evaluator: Evaluator,
    exact_derivative: Option<Evaluator>,
    samples: Vec<Complex64>,
    taylor: Vec<Complex64>,
    aliasing_estimate: f64,
    decay_radius: Option<f64>,
    spec: QuadratureSpec,
}

impl fmt::Debug for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFunction")
            .field("truncation_length", &self.taylor.len())
            .field("aliasing_estimate", &self.aliasing_estimate)
            .field("decay_radius", &self.decay_radius)
            .finish_non_exhaustive()
    }
}

fn forward_coefficients(samples: &[Complex64]) -> Vec<Complex64> {
    let m = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

fn inverse_samples(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Samples `evaluator` at the `M`-th roots of unity and extracts its Taylor
/// coefficients. Fails if a negative-frequency bin (index above `M/2`)
/// exceeds `tolerance * max(1, ||f||_2)`.
pub fn analyze(evaluator: Evaluator, spec: &QuadratureSpec) -> Result<AnalyticFunction> {
    let grid = spec.grid();
    let samples: Vec<Complex64> = grid.par_iter().map(|&z| evaluator(z)).collect();
    if let Some(bad) = samples.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(KbError::InvalidArguments(format!(
            "evaluator is not finite at grid point {}",
            grid[bad]
        )));
    }
    let taylor = forward_coefficients(&samples);
    let aliasing_estimate = check_analyticity(&taylor, spec.tolerance)?;
    Ok(AnalyticFunction {
        evaluator,
        exact_derivative: None,
        samples,
        taylor,
        aliasing_estimate,
        decay_radius: None,
        spec: *spec,
    })
}

fn check_analyticity(taylor: &[Complex64], tolerance: f64) -> Result<f64> {
    let m = taylor.len();
    let scale = taylor_h2(taylor).max(1.0);
    let mut worst = 0.0f64;
    for (bin, c) in taylor.iter().enumerate().skip(m / 2 + 1) {
        let magnitude = c.norm();
        if magnitude > tolerance * scale {
            return Err(KbError::AnalyticityViolation {
                bin,
                magnitude,
                tolerance: tolerance * scale,
            });
        }
        worst = worst.max(magnitude);
    }
    Ok(worst)
}

fn taylor_h2(taylor: &[Complex64]) -> f64 {
    let sq: Vec<f64> = taylor.iter().map(|c| c.norm_sqr()).collect();
    pairwise_sum(&sq).sqrt()
}

/// The Szego kernel `k_a(z) = 1 / (1 - conj(a) z)`.
pub fn szego_kernel(a: DiscPoint) -> Evaluator {
    let ac = a.value().conj();
    Arc::new(move |z| Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - ac * z))
}

/// Closed form `(k_a, k_b) = 1 / (1 - conj(a) b)`, i.e. the reproducing
/// identity `(k_a, k_b) = k_a(b)`.
pub fn szego_inner_oracle(a: DiscPoint, b: DiscPoint) -> Complex64 {
    Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - a.value().conj() * b.value())
}

impl AnalyticFunction {
    /// Polynomial with the given coefficients, `coeffs.len() <= M / 2`.
    pub fn polynomial(coeffs: &[Complex64], spec: &QuadratureSpec) -> Result<Self> {
        if coeffs.len() > spec.sample_count / 2 {
            return Err(KbError::InvalidArguments(format!(
                "degree {} needs more than {} samples",
                coeffs.len(),
                spec.sample_count
            )));
        }
        let owned = coeffs.to_vec();
        let shifted: Vec<Complex64> = owned
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        let f = analyze(Arc::new(move |z| horner(&owned, z)), spec)?;
        Ok(f.with_derivative(Arc::new(move |z| horner(&shifted, z))))
    }

    /// Attach an exact evaluator for `f'`, used by [`derivative`].
    pub fn with_derivative(mut self, derivative: Evaluator) -> Self {
        self.exact_derivative = Some(derivative);
        self
    }

    /// Record that the function is analytic in `|z| < rho`.
    pub fn with_decay_radius(mut self, rho: f64) -> Self {
        self.decay_radius = Some(rho);
        self
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.evaluator)(z)
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.evaluator
    }

    pub fn exact_derivative(&self) -> Option<&Evaluator> {
        self.exact_derivative.as_ref()
    }

    pub fn taylor(&self) -> &[Complex64] {
        &self.taylor
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn truncation_length(&self) -> usize {
        self.taylor.len()
    }

    /// Largest magnitude among the negative-frequency bins; for an analytic
    /// function this is the size of the aliased tail at the chosen `M`.
    pub fn aliasing_estimate(&self) -> f64 {
        self.aliasing_estimate
    }

    pub fn decay_radius(&self) -> Option<f64> {
        self.decay_radius
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// Re-analyse on `sample_count` points from the evaluator.
    pub fn resample(&self, sample_count: usize) -> Result<Self> {
        let spec = QuadratureSpec::new(sample_count, self.spec.tolerance)?;
        let mut out = analyze(self.evaluator.clone(), &spec)?;
        out.exact_derivative = self.exact_derivative.clone();
        out.decay_radius = self.decay_radius;
        Ok(out)
    }

    /// `f(0)`, read off the constant Taylor coefficient.
    pub fn value_at_origin(&self) -> Complex64 {
        self.taylor[0]
    }

    /// Mean of `|f|^2` over the sample grid.
    pub fn mean_square_on_grid(&self) -> f64 {
        let sq: Vec<f64> = self.samples.iter().map(|v| v.norm_sqr()).collect();
        pairwise_sum(&sq) / self.samples.len() as f64
    }
}

/// `(f, g)_{H^2} = sum_k f^(k) conj(g^(k))`.
///
/// Functions analysed with different sample counts are both brought to the
/// larger count first.
pub fn inner_product(f: &AnalyticFunction, g: &AnalyticFunction) -> Result<Complex64> {
    let m = f.truncation_length().max(g.truncation_length());
    let f_owned;
    let g_owned;
    let f = if f.truncation_length() < m {
        f_owned = f.resample(m)?;
        &f_owned
    } else {
        f
    };
    let g = if g.truncation_length() < m {
        g_owned = g.resample(m)?;
        &g_owned
    } else {
        g
    };
    let terms: Vec<Complex64> = f
        .taylor
        .iter()
        .zip(&g.taylor)
        .map(|(a, b)| a * b.conj())
        .collect();
    Ok(pairwise_sum_complex(&terms))
}

pub fn space_norm(f: &AnalyticFunction, space: Space) -> f64 {
    match space {
        Space::H2 => taylor_h2(&f.taylor),
        Space::Besov(s) => {
            if s == 0.0 {
                return taylor_h2(&f.taylor);
            }
            let terms: Vec<f64> = f
                .taylor
                .iter()
                .enumerate()
                .map(|(k, c)| ((k + 1) as f64).powf(2.0 * s) * c.norm_sqr())
                .collect();
            pairwise_sum(&terms).sqrt()
        }
        Space::Wiener => {
            let terms: Vec<f64> = f.taylor.iter().map(|c| c.norm()).collect();
            pairwise_sum(&terms)
        }
        Space::H1 => {
            let terms: Vec<f64> = f.samples.iter().map(|v| v.norm()).collect();
            pairwise_sum(&terms) / f.samples.len() as f64
        }
    }
}

/// `f'` with coefficients `(k+1) f^(k+1)`.
///
/// When `f` carries an exact derivative evaluator the new samples come from
/// it; otherwise they are the inverse DFT of the shifted coefficients and the
/// evaluator sums the shifted series.
pub fn derivative(f: &AnalyticFunction) -> AnalyticFunction {
    let m = f.taylor.len();
    let mut taylor: Vec<Complex64> = (0..m)
        .map(|k| {
            if k + 1 < m {
                f.taylor[k + 1] * (k + 1) as f64
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let (evaluator, samples) = match &f.exact_derivative {
        Some(exact) => {
            let grid = f.spec.grid();
            let samples: Vec<Complex64> = grid.par_iter().map(|&z| exact(z)).collect();
            taylor = forward_coefficients(&samples);
            (exact.clone(), samples)
        }
        None => {
            let positive: Vec<Complex64> = taylor[..m / 2 + 1].to_vec();
            let samples = inverse_samples(&taylor);
            let ev: Evaluator = Arc::new(move |z| horner(&positive, z));
            (ev, samples)
        }
    };
    let aliasing_estimate = taylor
        .iter()
        .skip(m / 2 + 1)
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    AnalyticFunction {
        evaluator,
        exact_derivative: None,
        samples,
        taylor,
        aliasing_estimate,
        decay_radius: f.decay_radius,
        spec: f.spec,
    }
}
