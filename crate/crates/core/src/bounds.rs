//! Closed-form bounds for `C_{n,r} = sup ‖D‖_{K_B -> H^2}` over Blaschke
//! products of degree at most `n` with poles in `|z| <= r`, and the numerical
//! experiments that test them against computed operator norms.
//!
//! `C_{n,r}` itself is never computed; sweeps report the largest norm seen
//! over the confluent, all-zero and randomly sampled configurations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::blaschke::{sup_norm_derivative_on_circle, DiscPoint, PoleConfiguration};
use crate::error::{KbError, Result};
use crate::hardy::{derivative, space_norm, AnalyticFunction, QuadratureSpec, Space};
use crate::model_space::{build_basis, operator_norm, test_function, test_function_coordinates, verify_derivative_expansion};
use crate::tolerances::Tolerances;

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(KbError::InvalidArguments(format!("r must lie in [0, 1), got {r}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCoefficients {
    /// Lower coefficient: `a(n,r) n / (1-r) <= C_{n,r}`.
    pub a_lower: f64,
    /// Upper coefficient: `C_{n,r} <= A(n,r) n / (1-r)`.
    #[serde(rename = "A_upper")]
    pub a_upper: f64,
    /// Absolute bound `(5/2) n / (1-r)`.
    pub legacy_52: f64,
}

/// `a = (1 + 5r^4 - 4r^4/n - min(3/4, 2/n))^{1/2} / (1+r)`,
/// `A = 1 + r + 1/sqrt(n)` and `(5/2) n / (1-r)`.
pub fn bound_coefficients(n: usize, r: f64) -> Result<BoundCoefficients> {
    if n < 2 {
        return Err(KbError::InvalidArguments(format!("bound coefficients need n >= 2, got {n}")));
    }
    check_radius(r)?;
    let nf = n as f64;
    let r4 = r.powi(4);
    let inner = 1.0 + 5.0 * r4 - 4.0 * r4 / nf - (0.75f64).min(2.0 / nf);
    Ok(BoundCoefficients {
        a_lower: inner.sqrt() / (1.0 + r),
        a_upper: 1.0 + r + 1.0 / nf.sqrt(),
        legacy_52: 2.5 * nf / (1.0 - r),
    })
}

/// Norm of differentiation on the one-dimensional space `K_{b_lambda}`:
/// `‖e_1'‖ = |lambda| (1 + |lambda|^2)^{1/2} / (1 - |lambda|^2)`.
///
/// `e_1' = conj(lambda) (1-|lambda|^2)^{1/2} / (1 - conj(lambda) z)^2` and the
/// squared `H^2` norm of `(1 - conj(lambda) z)^{-2}` is
/// `sum (k+1)^2 |lambda|^{2k} = (1 + |lambda|^2) / (1 - |lambda|^2)^3`.
pub fn n1_exact_norm(lambda: DiscPoint) -> f64 {
    let t = lambda.value().norm_sqr();
    t.sqrt() * (1.0 + t).sqrt() / (1.0 - t)
}

/// `|lambda| / (1 - |lambda|^2)^{1/2}`: the value obtained when the squared
/// norm of `(1 - conj(lambda) z)^{-2}` is taken as `sum (k+1) |lambda|^{2k}`.
/// Strictly below [`n1_exact_norm`] for `lambda != 0`; kept so the two can be
/// compared side by side.
pub fn n1_single_weight_norm(lambda: DiscPoint) -> f64 {
    let t = lambda.value().norm_sqr();
    (t / (1.0 - t)).sqrt()
}

/// `‖e_n'‖_2^2 = ((n-1)^2 + (2n-1)^2 r^2 + n^2 r^4) / (1 - r^2)^2` for the
/// last basis element of the confluent space `K_{b_r^n}`. The formula also
/// holds at `n = 1`.
pub fn confluent_derivative_norm_closed_form(n: usize, r: f64) -> Result<f64> {
    if n == 0 {
        return Err(KbError::InvalidArguments("n must be positive".into()));
    }
    if !(r.abs() < 1.0) {
        return Err(KbError::InvalidArguments(format!("|r| must be below 1, got {r}")));
    }
    let (c0, c1, c2) = phi_n_coefficients(n, r);
    Ok((c0 * c0 + c1 * c1 + c2 * c2) / (1.0 - r * r).powi(2))
}

/// Coefficients of `phi_n(z) = (1 + r z)(r z + (n-1)(1 + r z))
/// = (n-1) + (2n-1) r z + n r^2 z^2`.
///
/// Pure algebra: `r = 1` is accepted.
pub fn phi_n_coefficients(n: usize, r: f64) -> (f64, f64, f64) {
    let nf = n as f64;
    (nf - 1.0, (2.0 * nf - 1.0) * r, nf * r * r)
}

/// Lower bound on `‖f'‖ / ‖f‖` for the alternating test function, and the
/// value actually measured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalCertificate {
    pub n: usize,
    pub s: usize,
    pub r: f64,
    /// `(n-s) + 2r(n-s-1) + r^2(n-s-2)`.
    pub q: f64,
    pub certified_lower: f64,
    /// `‖f'‖_2 / ‖f‖_2` by quadrature.
    pub measured: f64,
    /// `‖f‖_2^2`, equal to `s + 3`.
    pub norm_sq: f64,
    /// `certified_lower / (n (1+r) / (1-r))`.
    pub normalized_lower: f64,
    pub holds: bool,
}

/// `(sqrt(s) Q - r(1+r) sqrt(s+3)) / ((1 - r^2) sqrt(s+3))`.
pub fn certified_lower_bound(n: usize, r: f64, s: usize) -> (f64, f64) {
    let (nf, sf) = (n as f64, s as f64);
    let q = (nf - sf) + 2.0 * r * (nf - sf - 1.0) + r * r * (nf - sf - 2.0);
    let root = (sf + 3.0).sqrt();
    let lower = (sf.sqrt() * q - r * (1.0 + r) * root) / ((1.0 - r * r) * root);
    (q, lower)
}

/// Largest even `s <= sqrt(n)`, lowered until `n >= s + 3`.
pub fn default_s(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(KbError::InvalidArguments(format!("the test function needs n >= 3, got {n}")));
    }
    let mut s = (n as f64).sqrt().floor() as usize;
    while s * s > n {
        s -= 1;
    }
    s -= s % 2;
    while s + 3 > n {
        s -= 2;
    }
    Ok(s)
}

/// Builds `f = sum_{k=0}^{s+2} (-1)^k e_{n-k}` in `K_{b_r^n}`, measures
/// `‖f'‖/‖f‖` and compares it with the certified lower bound.
pub fn extremal_certificate(n: usize, r: f64, s: usize) -> Result<ExtremalCertificate> {
    check_radius(r)?;
    test_function_coordinates(n, s)?;
    let config = PoleConfiguration::confluent_real(n, r)?;
    let f = test_function(&config, s)?;
    let norm = space_norm(&f, Space::H2);
    let measured = space_norm(&derivative(&f), Space::H2) / norm;
    let (q, certified_lower) = certified_lower_bound(n, r, s);
    Ok(ExtremalCertificate {
        n,
        s,
        r,
        q,
        certified_lower,
        measured,
        norm_sq: norm * norm,
        normalized_lower: certified_lower * (1.0 - r) / (n as f64 * (1.0 + r)),
        holds: measured >= certified_lower - Tolerances::DEFAULT.inequality_slack,
    })
}

/// The two polynomial terms of the confluent `‖f'‖^2` identity bracket
/// `(1 - r^2) ‖f'‖` from both sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleBracket {
    /// `|‖(1-rv)^2 Q‖ - ‖r(1-rv) P‖|`.
    pub lower: f64,
    /// `(1 - r^2) ‖f'‖`.
    pub middle: f64,
    /// `‖(1-rv)^2 Q‖ + ‖r(1-rv) P‖`.
    pub upper: f64,
    pub kernel_term_norm: f64,
    pub derivative_term_norm: f64,
    pub holds: bool,
}

pub fn triangle_bracket(n: usize, r: f64, coords: &[Complex64]) -> Result<TriangleBracket> {
    check_radius(r)?;
    let config = PoleConfiguration::confluent_real(n, r)?;
    let res = verify_derivative_expansion(&config, coords)?;
    let middle = (1.0 - r * r) * res.derivative_norm_sq.sqrt();
    let (p, q) = (res.kernel_term_norm, res.derivative_term_norm);
    let slack = Tolerances::DEFAULT.inequality_slack * middle.max(1.0);
    let lower = (q - p).abs();
    let upper = q + p;
    Ok(TriangleBracket {
        lower,
        middle,
        upper,
        kernel_term_norm: p,
        derivative_term_norm: q,
        holds: lower <= middle + slack && middle <= upper + slack,
    })
}

/// `c = 2 sqrt(3 pi)`.
pub fn dyakonov_c() -> f64 {
    2.0 * (3.0 * PI).sqrt()
}

/// `a = 1 / (36 c)` and `A = (36 + c) / (2 pi)`.
pub fn dyakonov_constants() -> (f64, f64) {
    let c = dyakonov_c();
    (1.0 / (36.0 * c), (36.0 + c) / (2.0 * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DyakonovBracket {
    pub sup_b_derivative: f64,
    pub lower: f64,
    pub upper: f64,
    pub norm: f64,
    pub holds: bool,
}

/// `a ‖B'‖_∞ <= ‖D‖ <= A ‖B'‖_∞`.
pub fn dyakonov_bracket(config: &PoleConfiguration) -> Result<DyakonovBracket> {
    let grid = QuadratureSpec::for_model_space(config.n(), config.r()).sample_count();
    let sup = sup_norm_derivative_on_circle(config, grid)?;
    let (a, big_a) = dyakonov_constants();
    let norm = operator_norm(config)?.norm;
    let (lower, upper) = (a * sup, big_a * sup);
    let tol = Tolerances::DEFAULT.inequality_slack;
    Ok(DyakonovBracket {
        sup_b_derivative: sup,
        lower,
        upper,
        norm,
        holds: lower - tol <= norm && norm <= upper + tol,
    })
}

/// One `(n, r)` cell of a convergence sweep on the confluent configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub r: f64,
    /// `‖D‖` at `sigma = {r, ..., r}`.
    pub norm: f64,
    /// `(1 - r) norm / n`.
    pub ratio: f64,
    pub a_lower: f64,
    #[serde(rename = "A_upper")]
    pub a_upper: f64,
    pub legacy_52: f64,
    /// `(1 + r) / (1 - r)`, the limit of `C_{n,r} / n`.
    pub limit: f64,
    /// `|ratio - (1 + r)|`.
    pub limit_gap: f64,
    /// `‖e_n'‖_2` from the closed form.
    pub last_element_derivative: f64,
    /// `norm <= A n/(1-r)` and `norm <= (5/2) n/(1-r)`, both with slack.
    pub upper_holds: bool,
    /// `‖e_n'‖ >= a n/(1-r)`.
    pub lower_chain_holds: bool,
}

pub fn bound_report(n: usize, r: f64) -> Result<BoundReport> {
    let coeffs = bound_coefficients(n, r)?;
    let config = PoleConfiguration::confluent_real(n, r)?;
    let norm = operator_norm(&config)?.norm;
    let scale = n as f64 / (1.0 - r);
    let ratio = norm / scale;
    let tol = Tolerances::DEFAULT.inequality_slack;
    let last = confluent_derivative_norm_closed_form(n, r)?.sqrt();
    Ok(BoundReport {
        n,
        r,
        norm,
        ratio,
        a_lower: coeffs.a_lower,
        a_upper: coeffs.a_upper,
        legacy_52: coeffs.legacy_52,
        limit: (1.0 + r) / (1.0 - r),
        limit_gap: (ratio - (1.0 + r)).abs(),
        last_element_derivative: last,
        upper_holds: norm <= coeffs.a_upper * scale + tol && norm <= coeffs.legacy_52 + tol,
        lower_chain_holds: last >= coeffs.a_lower * scale - tol,
    })
}

/// Sorts `(n, r)` cells ascending and removes duplicates.
fn sorted_cells(n_list: &[usize], r_list: &[f64]) -> Vec<(usize, f64)> {
    let mut cells: Vec<(usize, f64)> = n_list
        .iter()
        .flat_map(|&n| r_list.iter().map(move |&r| (n, r)))
        .collect();
    cells.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    cells.dedup();
    cells
}

/// Largest value of `r` accepted by sweeps.
pub const SWEEP_MAX_R: f64 = 0.95;

/// Computes a [`BoundReport`] for every `(n, r)`; rows are sorted by `(n, r)`.
pub fn convergence_sweep(n_list: &[usize], r_list: &[f64]) -> Result<Vec<BoundReport>> {
    if let Some(&n) = n_list.iter().find(|&&n| n < 2) {
        return Err(KbError::InvalidArguments(format!("sweep needs n >= 2, got {n}")));
    }
    if let Some(&r) = r_list.iter().find(|&&r| !(0.0..=SWEEP_MAX_R).contains(&r)) {
        return Err(KbError::InvalidArguments(format!("sweep needs r in [0, {SWEEP_MAX_R}], got {r}")));
    }
    sorted_cells(n_list, r_list)
        .into_par_iter()
        .map(|(n, r)| bound_report(n, r))
        .collect()
}

/// Area-uniform sample from the closed disc of radius `r`.
fn sample_disc(rng: &mut ChaCha8Rng, r: f64) -> Result<DiscPoint> {
    let modulus = r * rng.gen::<f64>().sqrt();
    let angle = 2.0 * PI * rng.gen::<f64>();
    DiscPoint::new(Complex64::from_polar(modulus, angle))
}

/// `trials` random configurations of `n` poles, drawn with a seeded ChaCha8 stream.
pub fn random_configurations(n: usize, r: f64, trials: usize, seed: u64) -> Result<Vec<PoleConfiguration>> {
    check_radius(r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| PoleConfiguration::new((0..n).map(|_| sample_disc(&mut rng, r)).collect::<Result<_>>()?))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomizedMax {
    pub n: usize,
    pub r: f64,
    /// Largest norm over all tried configurations.
    pub max_norm: f64,
    pub confluent_norm: f64,
    pub zero_norm: f64,
    pub upper_bound: f64,
    pub legacy_bound: f64,
    /// Configurations whose norm exceeded either upper bound.
    pub violations: usize,
    pub configurations_tried: usize,
}

/// Estimates `C_{n,r}` from below as the largest `‖D‖` over the confluent
/// configuration, the all-zero configuration and `trials` random ones.
pub fn randomized_configuration_max(n: usize, r: f64, trials: usize, seed: u64) -> Result<RandomizedMax> {
    if trials == 0 {
        return Err(KbError::InvalidArguments("trials must be at least 1".into()));
    }
    let coeffs = bound_coefficients(n, r)?;
    let mut configs = vec![
        PoleConfiguration::confluent_real(n, r)?,
        PoleConfiguration::zeros(n)?,
    ];
    configs.extend(random_configurations(n, r, trials, seed)?);
    let norms: Vec<f64> = configs
        .par_iter()
        .map(|c| operator_norm(c).map(|res| res.norm))
        .collect::<Result<_>>()?;
    let tol = Tolerances::DEFAULT.inequality_slack;
    let upper_bound = coeffs.a_upper * n as f64 / (1.0 - r);
    Ok(RandomizedMax {
        n,
        r,
        max_norm: norms.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        confluent_norm: norms[0],
        zero_norm: norms[1],
        upper_bound,
        legacy_bound: coeffs.legacy_52,
        violations: norms
            .iter()
            .filter(|&&x| x > upper_bound + tol || x > coeffs.legacy_52 + tol)
            .count(),
        configurations_tried: norms.len(),
    })
}

/// Target space of an embedding-ratio study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EmbeddingSpace {
    Besov(f64),
    Wiener,
}

impl EmbeddingSpace {
    pub fn label(&self) -> String {
        match self {
            EmbeddingSpace::Besov(s) => format!("besov({s})"),
            EmbeddingSpace::Wiener => "wiener".to_string(),
        }
    }

    fn space(&self) -> Space {
        match *self {
            EmbeddingSpace::Besov(s) => Space::Besov(s),
            EmbeddingSpace::Wiener => Space::Wiener,
        }
    }

    /// `(n/(1-r))^s` for Besov, `(n^2/(1-r))^{1/2}` for Wiener.
    pub fn growth(&self, n: usize, r: f64) -> f64 {
        match *self {
            EmbeddingSpace::Besov(s) => (n as f64 / (1.0 - r)).powf(s),
            EmbeddingSpace::Wiener => ((n * n) as f64 / (1.0 - r)).sqrt(),
        }
    }
}

/// `‖f‖_space / ‖f‖_2`.
pub fn embedding_ratio(space: EmbeddingSpace, f: &AnalyticFunction) -> f64 {
    space_norm(f, space.space()) / space_norm(f, Space::H2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingRecord {
    pub space: String,
    pub n: usize,
    pub r: f64,
    /// Largest `‖f‖_space / ‖f‖_2` over the trials.
    pub max_ratio: f64,
    /// `max_ratio` divided by the conjectured growth order.
    pub normalized: f64,
    pub trials: usize,
}

/// For each `(n, r)`: random functions in random model spaces (the first
/// trial uses the confluent space), recording the largest embedding ratio.
pub fn embedding_ratio_sweep(
    space: EmbeddingSpace,
    n_list: &[usize],
    r_list: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<EmbeddingRecord>> {
    if let EmbeddingSpace::Besov(s) = space {
        if !(s >= 0.0) {
            return Err(KbError::InvalidArguments(format!("Besov smoothness must be >= 0, got {s}")));
        }
    }
    if trials == 0 || n_list.contains(&0) {
        return Err(KbError::InvalidArguments("need trials >= 1 and n >= 1".into()));
    }
    for &r in r_list {
        check_radius(r)?;
    }
    let cells = sorted_cells(n_list, r_list);
    cells
        .into_par_iter()
        .enumerate()
        .map(|(cell, (n, r))| {
            let cell_seed = seed ^ (cell as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let mut rng = ChaCha8Rng::seed_from_u64(cell_seed);
            let mut configs = vec![PoleConfiguration::confluent_real(n, r)?];
            configs.extend(random_configurations(n, r, trials.saturating_sub(1), rng.gen())?);
            let spec = QuadratureSpec::for_model_space(n, r);
            let mut max_ratio = f64::NEG_INFINITY;
            for config in &configs {
                let coords: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let f = build_basis(config, &spec)?.combination(&coords)?;
                let ratio = embedding_ratio(space, &f);
                if !ratio.is_finite() {
                    return Err(KbError::InvalidArguments(format!("non-finite ratio at n={n}, r={r}")));
                }
                max_ratio = max_ratio.max(ratio);
            }
            Ok(EmbeddingRecord {
                space: space.label(),
                n,
                r,
                max_ratio,
                normalized: max_ratio / space.growth(n, r),
                trials: configs.len(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardyCheck {
    pub wiener: f64,
    /// `pi ‖f'‖_{H^1} + |f(0)|`.
    pub rhs: f64,
    pub holds: bool,
}

/// `‖f‖_W <= pi ‖f'‖_{H^1} + |f(0)|`.
pub fn hardy_inequality(f: &AnalyticFunction) -> HardyCheck {
    let wiener = space_norm(f, Space::Wiener);
    let rhs = PI * space_norm(&derivative(f), Space::H1) + f.value_at_origin().norm();
    HardyCheck {
        wiener,
        rhs,
        holds: wiener <= rhs + Tolerances::DEFAULT.inequality_slack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_examples() {
        let b = bound_coefficients(4, 0.0).unwrap();
        assert!((b.a_lower - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((b.a_upper - 1.5).abs() < 1e-15);
        let b = bound_coefficients(16, 0.5).unwrap();
        assert!((b.a_lower - 1.171875f64.sqrt() / 1.5).abs() < 1e-15);
        assert!((b.a_upper - 1.75).abs() < 1e-15);
        assert!((b.legacy_52 - 80.0).abs() < 1e-12);
        let b = bound_coefficients(2, 0.0).unwrap();
        assert!((b.a_lower - 0.5).abs() < 1e-15);
        assert!(bound_coefficients(1, 0.5).is_err());
        assert!(bound_coefficients(4, 1.0).is_err());
    }

    #[test]
    fn n1_values() {
        assert_eq!(n1_exact_norm(DiscPoint::real(0.0).unwrap()), 0.0);
        let half = DiscPoint::real(0.5).unwrap();
        assert!((n1_exact_norm(half) - 0.5 * 1.25f64.sqrt() / 0.75).abs() < 1e-15);
        assert!((n1_single_weight_norm(half) - 0.577_350_269_189_625_7).abs() < 1e-15);
        let p9 = DiscPoint::real(0.9).unwrap();
        assert!((n1_single_weight_norm(p9) - 0.9 / 0.19f64.sqrt()).abs() < 1e-14);
        assert!(n1_exact_norm(p9) > n1_single_weight_norm(p9));
    }

    #[test]
    fn closed_form_examples() {
        let v = confluent_derivative_norm_closed_form(2, 0.5).unwrap();
        assert!((v - 3.5 / 0.5625).abs() < 1e-13);
        assert_eq!(confluent_derivative_norm_closed_form(2, 0.0).unwrap(), 1.0);
        let v = confluent_derivative_norm_closed_form(10, 0.9).unwrap();
        let expected = (81.0 + 361.0 * 0.81 + 100.0 * 0.6561) / (0.19f64 * 0.19);
        assert!((v - expected).abs() <= 1e-12 * expected);
        // n = 1 reproduces |lambda|^2 (1 + |lambda|^2) / (1 - |lambda|^2)^2
        let v = confluent_derivative_norm_closed_form(1, 0.5).unwrap();
        assert!((v.sqrt() - n1_exact_norm(DiscPoint::real(0.5).unwrap())).abs() < 1e-15);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_n_coefficients(3, 0.5), (2.0, 2.5, 0.75));
        assert_eq!(phi_n_coefficients(2, 0.0), (1.0, 0.0, 0.0));
        assert_eq!(phi_n_coefficients(5, 1.0), (4.0, 9.0, 5.0));
    }

    #[test]
    fn phi_matches_polynomial_product() {
        // expand (1 + r z)(r z + (n-1)(1 + r z)) by convolution
        for (n, r) in [(2usize, 0.3), (7, 0.8), (40, -0.6), (5, 1.0)] {
            let a = [1.0, r];
            let b = [(n - 1) as f64, r + (n - 1) as f64 * r];
            let prod = [a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1]];
            let (c0, c1, c2) = phi_n_coefficients(n, r);
            assert!((c0 - prod[0]).abs() < 1e-12 && (c1 - prod[1]).abs() < 1e-12 && (c2 - prod[2]).abs() < 1e-12);
        }
    }

    #[test]
    fn certified_bound_examples() {
        let (q, lower) = certified_lower_bound(100, 0.5, 10);
        assert!((q - 201.0).abs() < 1e-12);
        assert!((lower - 234.051_549_174_283_9).abs() < 1e-9, "{lower}");
        let (q, lower) = certified_lower_bound(10, 0.0, 0);
        assert_eq!((q, lower), (10.0, 0.0));
        let (_, lower) = certified_lower_bound(1000, 0.5, 30);
        assert!(lower / 3000.0 >= 0.9);
    }

    #[test]
    fn default_s_values() {
        let cases = [(3, 0), (4, 0), (5, 2), (16, 4), (100, 10), (120, 10), (400, 20), (1000, 30)];
        for (n, s) in cases {
            assert_eq!(default_s(n).unwrap(), s, "n={n}");
        }
        assert!(default_s(2).is_err());
    }

    #[test]
    fn extremal_rejects_bad_arguments() {
        assert!(extremal_certificate(10, 0.5, 3).is_err());
        assert!(extremal_certificate(4, 0.5, 2).is_err());
    }

    #[test]
    fn dyakonov_constant_values() {
        let (a, big_a) = dyakonov_constants();
        assert!((a - 0.004_524_1).abs() < 1e-7, "{a}");
        assert!((big_a - 6.706_78).abs() < 1e-5, "{big_a}");
    }

    #[test]
    fn sweep_validation_and_order() {
        assert!(convergence_sweep(&[1], &[0.5]).is_err());
        assert!(convergence_sweep(&[4], &[0.96]).is_err());
        let rows = convergence_sweep(&[4, 2], &[0.5, 0.0]).unwrap();
        let keys: Vec<(usize, f64)> = rows.iter().map(|r| (r.n, r.r)).collect();
        assert_eq!(keys, vec![(2, 0.0), (2, 0.5), (4, 0.0), (4, 0.5)]);
        assert!(rows.iter().all(|r| r.upper_holds && r.lower_chain_holds));
    }

    #[test]
    fn random_configurations_are_seeded_and_inside_radius() {
        let a = random_configurations(5, 0.7, 3, 11).unwrap();
        let b = random_configurations(5, 0.7, 3, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|c| c.r() <= 0.7));
        assert_ne!(a, random_configurations(5, 0.7, 3, 12).unwrap());
    }
}
