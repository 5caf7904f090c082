//! Identities specific to the confluent configuration `sigma = {r, ..., r}`,
//! where `B = b_r^n` and `e_k = sqrt(1 - r^2) / (1 - r z) * b_r^{k-1}`.
//!
//! Substituting `v = b_r(u)` on the circle turns `||f'||_2^2` for
//! `f = sum c_k e_k` into the `H^2` norm of an explicit polynomial of degree
//! `n` in `v`:
//!
//! `(1 - r^2)^2 ||f'||^2 = || r (1 - r v) P(v) - (1 - r v)^2 Q(v) ||^2`
//!
//! with `P(v) = sum_{k<n} c_{k+1} v^k` and `Q(v) = sum_{k<n-1} (k+1) c_{k+2} v^k`.

use num_complex::Complex64;

use super::basis::build_basis;
use super::gram::HermitianMatrix;
use crate::blaschke::{factor, factor_derivative, PoleConfiguration};
use crate::error::{KbError, Result};
use crate::hardy::{AnalyticFunction, QuadratureSpec};
use crate::numerics::{circle_grid, pairwise_sum};

fn real_confluent_pole(config: &PoleConfiguration) -> Result<f64> {
    config.confluent_real_pole().ok_or_else(|| {
        KbError::InvalidArguments("expected every pole to equal the same real number r".into())
    })
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Coefficients (in `v`) of `r (1 - r v) P(v)`, length `n + 1`.
pub fn kernel_term_coefficients(r: f64, coords: &[Complex64]) -> Vec<Complex64> {
    let n = coords.len();
    let mut out = vec![zero(); n + 1];
    for (k, &c) in coords.iter().enumerate() {
        out[k] += c * r;
        out[k + 1] -= c * (r * r);
    }
    out
}

/// Coefficients (in `v`) of `(1 - r v)^2 Q(v)` by direct convolution, length `n + 1`.
pub fn derivative_term_coefficients(r: f64, coords: &[Complex64]) -> Vec<Complex64> {
    let n = coords.len();
    let mut out = vec![zero(); n + 1];
    for k in 0..n.saturating_sub(1) {
        let q = coords[k + 1] * (k + 1) as f64;
        out[k] += q;
        out[k + 1] -= q * (2.0 * r);
        out[k + 2] += q * (r * r);
    }
    out
}

/// The same coefficients as [`derivative_term_coefficients`], written out
/// term by term: `c_2`, `2 (c_3 - r c_2)`, the three-term middle band,
/// `r^2 (n-2) c_{n-1} - 2 r (n-1) c_n` and `r^2 (n-1) c_n`. Needs `n >= 4`.
pub fn derivative_term_coefficients_explicit(r: f64, coords: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coords.len();
    if n < 4 {
        return Err(KbError::InvalidArguments(format!(
            "explicit expansion needs n >= 4, got {n}"
        )));
    }
    // c(k) = (f, e_k), 1-based
    let c = |k: usize| coords[k - 1];
    let mut out = vec![zero(); n + 1];
    out[0] = c(2);
    out[1] = (c(3) - c(2) * r) * 2.0;
    for (k, slot) in out.iter_mut().enumerate().take(n - 1).skip(2) {
        *slot = c(k + 2) * (k + 1) as f64 - c(k + 1) * (2.0 * r * k as f64) + c(k) * (r * r * (k - 1) as f64);
    }
    out[n - 1] = c(n - 1) * (r * r * (n - 2) as f64) - c(n) * (2.0 * r * (n - 1) as f64);
    out[n] = c(n) * (r * r * (n - 1) as f64);
    Ok(out)
}

/// Real symmetric derivative Gram matrix of the confluent basis from the
/// polynomial identity: `G = T^T T / (1 - r^2)^2` where column `j` of `T`
/// holds the `v`-coefficients contributed by `c_{j+1}`.
pub fn structured_derivative_gram(n: usize, r: f64) -> Result<HermitianMatrix> {
    if n == 0 || !(r.abs() < 1.0) {
        return Err(KbError::InvalidArguments(format!("need n >= 1 and |r| < 1, got n={n}, r={r}")));
    }
    let rows = n + 1;
    let mut t = vec![0.0; rows * n];
    for j in 0..n {
        t[j * n + j] += r;
        t[(j + 1) * n + j] -= r * r;
        if j >= 1 {
            let w = j as f64;
            t[(j - 1) * n + j] -= w;
            t[j * n + j] += 2.0 * r * w;
            t[(j + 1) * n + j] -= r * r * w;
        }
    }
    let scale = 1.0 / (1.0 - r * r).powi(2);
    let mut g = vec![0.0; n * n];
    for a in 0..n {
        for b in a..n {
            // T is banded: column j is nonzero only on rows j-1..=j+1
            let lo = a.max(b).saturating_sub(1);
            let hi = (a.min(b) + 1).min(rows - 1);
            let dot: f64 = (lo..=hi).map(|i| t[i * n + a] * t[i * n + b]).sum();
            g[a * n + b] = dot * scale;
            g[b * n + a] = dot * scale;
        }
    }
    Ok(HermitianMatrix::from_real(n, &g))
}

/// Right-hand side of the expansion
/// `f' = -b_r' [ r / sqrt(1-r^2) sum c_k b_r^{k-1} + sqrt(1-r^2) / (z - r) sum (k-1) c_k b_r^{k-1} ]`.
pub fn derivative_expansion_rhs(r: f64, coords: &[Complex64], z: Complex64) -> Complex64 {
    let lambda = Complex64::new(r, 0.0);
    let b = factor(lambda, z);
    let db = factor_derivative(lambda, z);
    let s = (1.0 - r * r).sqrt();
    let mut plain = zero();
    let mut weighted = zero();
    for (k, &c) in coords.iter().enumerate().rev() {
        plain = plain * b + c;
        weighted = weighted * b + c * k as f64;
    }
    -db * (plain * (r / s) + weighted * s / (z - r))
}

/// Residuals of the confluent derivative identities for `f = sum c_k e_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionResiduals {
    /// `max |f' - rhs| / max(1, max |f'|)` over the circle grid.
    pub pointwise: f64,
    /// `|‖f'‖^2 - polynomial form| / max(1, ‖f'‖^2)`, each side by quadrature.
    pub integral: f64,
    pub derivative_norm_sq: f64,
    /// `‖r (1 - r v) P‖_2` and `‖(1 - r v)^2 Q‖_2`.
    pub kernel_term_norm: f64,
    pub derivative_term_norm: f64,
}

/// Checks the pointwise expansion of `f'` and the polynomial form of `‖f'‖^2`.
pub fn verify_derivative_expansion(config: &PoleConfiguration, coords: &[Complex64]) -> Result<ExpansionResiduals> {
    let r = real_confluent_pole(config)?;
    let n = config.n();
    if coords.len() != n {
        return Err(KbError::InvalidArguments(format!("expected {n} coordinates, got {}", coords.len())));
    }
    let spec = QuadratureSpec::for_model_space(n, r.abs());
    let basis = build_basis(config, &spec)?;
    let grid = circle_grid(spec.sample_count());
    let m = grid.len() as f64;

    let mut worst = 0.0f64;
    let mut peak = 0.0f64;
    let mut direct_sq = Vec::with_capacity(grid.len());
    for &z in &grid {
        let (_, direct) = basis.eval_combination(coords, z);
        let rhs = derivative_expansion_rhs(r, coords, z);
        worst = worst.max((direct - rhs).norm());
        peak = peak.max(direct.norm());
        direct_sq.push(direct.norm_sqr());
    }
    let derivative_norm_sq = pairwise_sum(&direct_sq) / m;

    let kernel = kernel_term_coefficients(r, coords);
    let deriv = derivative_term_coefficients(r, coords);
    let mut poly_sq = Vec::with_capacity(grid.len());
    let mut kernel_sq = Vec::with_capacity(grid.len());
    let mut deriv_sq = Vec::with_capacity(grid.len());
    let horner = |cs: &[Complex64], v: Complex64| cs.iter().rev().fold(zero(), |acc, &c| acc * v + c);
    for &v in &grid {
        let kv = horner(&kernel, v);
        let dv = horner(&deriv, v);
        poly_sq.push((kv - dv).norm_sqr());
        kernel_sq.push(kv.norm_sqr());
        deriv_sq.push(dv.norm_sqr());
    }
    let poly_form = pairwise_sum(&poly_sq) / m / (1.0 - r * r).powi(2);

    Ok(ExpansionResiduals {
        pointwise: worst / peak.max(1.0),
        integral: (derivative_norm_sq - poly_form).abs() / derivative_norm_sq.max(1.0),
        derivative_norm_sq,
        kernel_term_norm: (pairwise_sum(&kernel_sq) / m).sqrt(),
        derivative_term_norm: (pairwise_sum(&deriv_sq) / m).sqrt(),
    })
}

/// Coordinates of `f = e_n - e_{n-1} + ... + e_{n-s-2}`: `+1, -1, ...` on the
/// last `s + 3` basis elements.
pub fn test_function_coordinates(n: usize, s: usize) -> Result<Vec<Complex64>> {
    if s % 2 != 0 {
        return Err(KbError::InvalidArguments(format!("s must be even, got {s}")));
    }
    if n < s + 3 {
        return Err(KbError::InvalidArguments(format!("need n >= s + 3, got n={n}, s={s}")));
    }
    let mut coords = vec![zero(); n];
    for k in 0..=s + 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coords[n - 1 - k] = Complex64::new(sign, 0.0);
    }
    Ok(coords)
}

/// The alternating test function `sum_{k=0}^{s+2} (-1)^k e_{n-k}` in a
/// confluent model space; its squared norm is `s + 3`.
pub fn test_function(config: &PoleConfiguration, s: usize) -> Result<AnalyticFunction> {
    let first = config.poles()[0];
    if config.poles().iter().any(|p| *p != first) {
        return Err(KbError::InvalidArguments("test function needs all poles equal".into()));
    }
    let coords = test_function_coordinates(config.n(), s)?;
    let spec = QuadratureSpec::for_model_space(config.n(), config.r());
    build_basis(config, &spec)?.combination(&coords)
}
