mod common;

use std::sync::Arc;

use common::c;
use kbnorm::hardy::szego_inner_oracle;
use kbnorm::{analyze, derivative, inner_product, space_norm, szego_kernel, AnalyticFunction, DiscPoint, QuadratureSpec, Space};
use num_complex::Complex64;
use proptest::prelude::*;

fn kernel(a: Complex64, m: usize) -> AnalyticFunction {
    analyze(szego_kernel(DiscPoint::new(a).unwrap()), &QuadratureSpec::with_samples(m).unwrap()).unwrap()
}

#[test]
fn besov_norm_of_kernel_matches_series() {
    for (a, s) in [(c(0.5, 0.0), 0.5), (c(0.0, 0.7), 1.0), (c(-0.3, 0.3), 2.0)] {
        let t = a.norm_sqr();
        let series: f64 = (0..5000).map(|k| ((k + 1) as f64).powf(2.0 * s) * t.powi(k)).sum();
        let got = space_norm(&kernel(a, 1024), Space::Besov(s));
        assert!((got - series.sqrt()).abs() < 1e-10 * series.sqrt());
    }
}

#[test]
fn wiener_norm_of_kernel() {
    for a in [c(0.5, 0.0), c(0.0, -0.9), Complex64::from_polar(0.75, 2.0)] {
        let got = space_norm(&kernel(a, 2048), Space::Wiener);
        assert!((got - 1.0 / (1.0 - a.norm())).abs() < 1e-10);
    }
}

#[test]
fn h1_norm_of_monomials_and_constants() {
    let spec = QuadratureSpec::with_samples(128).unwrap();
    let z5 = analyze(Arc::new(|z: Complex64| z.powu(5) * 3.0), &spec).unwrap();
    assert!((space_norm(&z5, Space::H1) - 3.0).abs() < 1e-14);
    let constant = analyze(Arc::new(|_| c(-2.0, 0.0)), &spec).unwrap();
    assert!((space_norm(&constant, Space::H1) - 2.0).abs() < 1e-14);
}

#[test]
fn spectral_and_exact_derivatives_agree() {
    let a = c(0.4, -0.5);
    let spec = QuadratureSpec::with_samples(512).unwrap();
    let plain = analyze(szego_kernel(DiscPoint::new(a).unwrap()), &spec).unwrap();
    let ac = a.conj();
    let exact = plain
        .clone()
        .with_derivative(Arc::new(move |z: Complex64| ac / ((c(1.0, 0.0) - ac * z) * (c(1.0, 0.0) - ac * z))));
    let (d1, d2) = (derivative(&plain), derivative(&exact));
    for (x, y) in d1.taylor().iter().zip(d2.taylor()).take(200) {
        assert!((x - y).norm() < 1e-12);
    }
    let z = c(0.3, 0.2);
    assert!((d1.eval(z) - d2.eval(z)).norm() < 1e-12);
    // ‖k_a'‖^2 = t (1 + t) / (1 - t)^3
    let t = a.norm_sqr();
    let expected = t * (1.0 + t) / (1.0 - t).powi(3);
    assert!((space_norm(&d1, Space::H2).powi(2) - expected).abs() < 1e-12);
}

#[test]
fn aliasing_estimate_is_small_for_analytic_input() {
    let f = kernel(c(0.9, 0.0), 4096);
    assert!(f.aliasing_estimate() < 1e-15);
    assert_eq!(f.truncation_length(), 4096);
}

#[test]
fn rejects_non_analytic_input() {
    let spec = QuadratureSpec::with_samples(256).unwrap();
    let poisson = analyze(Arc::new(|z: Complex64| c(1.0, 0.0) / (c(1.0, 0.0) - 0.5 * z.conj())), &spec);
    assert!(poisson.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parseval(re in -0.9..0.9f64, im in -0.9..0.9f64) {
        let a = c(re, im);
        prop_assume!(a.norm() < 0.9);
        let f = kernel(a, 4096);
        prop_assert!((space_norm(&f, Space::H2).powi(2) - f.mean_square_on_grid()).abs() < 1e-12);
    }

    #[test]
    fn kernel_inner_products(ar in 0.0..0.9f64, at in 0.0..6.3f64, br in 0.0..0.9f64, bt in 0.0..6.3f64) {
        let (a, b) = (Complex64::from_polar(ar, at), Complex64::from_polar(br, bt));
        let ip = inner_product(&kernel(a, 4096), &kernel(b, 2048)).unwrap();
        let oracle = szego_inner_oracle(DiscPoint::new(a).unwrap(), DiscPoint::new(b).unwrap());
        prop_assert!((ip - oracle).norm() < 1e-12);
    }
}
