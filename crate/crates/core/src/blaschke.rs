//! Blaschke factors, finite Blaschke products and their derivatives.
//!
//! The elementary factor is `b_lambda(z) = (lambda - z) / (1 - conj(lambda) z)`.
//! A pole configuration is an ordered list of points in the open disc;
//! repeated entries encode multiplicity.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KbError, Result};
use crate::tolerances::Tolerances;

/// A point strictly inside the unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) || value.norm() >= 1.0 {
            return Err(KbError::OutsideDisc {
                re: value.re,
                im: value.im,
            });
        }
        Ok(Self(value))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }
}

/// Ordered poles `lambda_1..lambda_n` of a finite Blaschke product.
///
/// `n` is the list length and `r` the largest modulus; both are derived
/// from the poles and never supplied separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleConfiguration {
    poles: Vec<DiscPoint>,
    max_modulus: f64,
}

impl PoleConfiguration {
    pub fn new(poles: Vec<DiscPoint>) -> Result<Self> {
        if poles.is_empty() {
            return Err(KbError::EmptyConfiguration);
        }
        let max_modulus = poles.iter().map(|p| p.modulus()).fold(0.0, f64::max);
        Ok(Self { poles, max_modulus })
    }

    pub fn from_complex(values: &[Complex64]) -> Result<Self> {
        let poles = values
            .iter()
            .map(|&v| DiscPoint::new(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(poles)
    }

    /// `n` copies of the same pole.
    pub fn confluent(n: usize, pole: DiscPoint) -> Result<Self> {
        Self::new(vec![pole; n])
    }

    /// `n` copies of the real pole `r`: the product `b_r^n`.
    pub fn confluent_real(n: usize, r: f64) -> Result<Self> {
        Self::confluent(n, DiscPoint::real(r)?)
    }

    /// All poles at the origin; the model space is the polynomials of degree `< n`.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::confluent_real(n, 0.0)
    }

    pub fn poles(&self) -> &[DiscPoint] {
        &self.poles
    }

    pub fn n(&self) -> usize {
        self.poles.len()
    }

    pub fn r(&self) -> f64 {
        self.max_modulus
    }

    /// Common real pole if every pole equals the same real number.
    pub fn confluent_real_pole(&self) -> Option<f64> {
        let first = self.poles[0].value();
        let same = self.poles.iter().all(|p| p.value() == first);
        (same && first.im == 0.0).then_some(first.re)
    }

    pub fn map_poles(&self, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        let mapped: Vec<Complex64> = self.poles.iter().map(|p| f(p.value())).collect();
        Self::from_complex(&mapped)
    }
}

#[inline]
pub(crate) fn factor(lambda: Complex64, z: Complex64) -> Complex64 {
    (lambda - z) / (Complex64::new(1.0, 0.0) - lambda.conj() * z)
}

/// `b_lambda'(z) = (|lambda|^2 - 1) / (1 - conj(lambda) z)^2`.
#[inline]
pub(crate) fn factor_derivative(lambda: Complex64, z: Complex64) -> Complex64 {
    let d = Complex64::new(1.0, 0.0) - lambda.conj() * z;
    Complex64::new(lambda.norm_sqr() - 1.0, 0.0) / (d * d)
}

/// Product value and derivative by product-rule accumulation.
///
/// The recurrence `P_k' = P_{k-1}' b_k + P_{k-1} b_k'` never divides by a
/// factor, so it stays exact at the zeros of the product.
pub(crate) fn product_and_derivative(poles: &[DiscPoint], z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(1.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for p in poles {
        let lambda = p.value();
        let b = factor(lambda, z);
        let db = factor_derivative(lambda, z);
        deriv = deriv * b + value * db;
        value *= b;
    }
    (value, deriv)
}

fn check_point(config: &PoleConfiguration, z: Complex64, tol: &Tolerances) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > 1.0 + tol.circle_slack {
        return Err(KbError::InvalidArguments(format!(
            "evaluation point {z} lies outside the closed unit disc"
        )));
    }
    for p in config.poles() {
        let denominator = (Complex64::new(1.0, 0.0) - p.value().conj() * z).norm();
        if denominator < tol.pole_denominator {
            return Err(KbError::PoleAtEvaluation { denominator });
        }
    }
    Ok(())
}

/// The finite Blaschke product `B = prod b_{lambda_i}` of a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    config: PoleConfiguration,
}

impl BlaschkeProduct {
    pub fn new(config: PoleConfiguration) -> Self {
        Self { config }
    }

    pub fn config(&self) -> &PoleConfiguration {
        &self.config
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        blaschke_eval(&self.config, z)
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        blaschke_derivative(&self.config, z)
    }
}

pub fn blaschke_eval(config: &PoleConfiguration, z: Complex64) -> Result<Complex64> {
    check_point(config, z, &Tolerances::DEFAULT)?;
    Ok(config
        .poles()
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, p| acc * factor(p.value(), z)))
}

pub fn blaschke_derivative(config: &PoleConfiguration, z: Complex64) -> Result<Complex64> {
    check_point(config, z, &Tolerances::DEFAULT)?;
    Ok(product_and_derivative(config.poles(), z).1)
}

/// Lower estimate of `sup_{|z|=1} |B'(z)|`.
///
/// Takes the maximum of `|B'|` over `grid_size` equispaced angles, then runs
/// one golden-section search on the two grid cells adjacent to the maximiser.
/// The result is never below the plain grid maximum.
pub fn sup_norm_derivative_on_circle(config: &PoleConfiguration, grid_size: usize) -> Result<f64> {
    if grid_size < 64 {
        return Err(KbError::InvalidArguments(format!(
            "grid size {grid_size} is below the minimum of 64"
        )));
    }
    let poles = config.poles();
    let modulus_at = |theta: f64| product_and_derivative(poles, Complex64::from_polar(1.0, theta)).1.norm();

    let step = 2.0 * PI / grid_size as f64;
    let (best_idx, best) = (0..grid_size)
        .map(|i| (i, modulus_at(step * i as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });

    let centre = step * best_idx as f64;
    let refined = golden_section_max(&modulus_at, centre - step, centre + step, 1e-13);
    Ok(best.max(refined))
}

fn golden_section_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= width {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}
