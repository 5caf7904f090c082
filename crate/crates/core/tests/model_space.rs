mod common;

use common::{c, kernel_span_norm, mw_element};
use kbnorm::model_space::confluent::{
    derivative_term_coefficients, derivative_term_coefficients_explicit, kernel_term_coefficients,
};
use kbnorm::model_space::{
    element_gram, largest_eigenpair, norm_from_gram, structured_derivative_gram, test_function,
    test_function_coordinates, verify_derivative_expansion,
};
use kbnorm::{
    build_basis, derivative, derivative_gram, operator_norm, operator_norm_with, space_norm, DiscPoint,
    PoleConfiguration, QuadratureSpec, Space,
};
use num_complex::Complex64;

fn spec_for(config: &PoleConfiguration) -> QuadratureSpec {
    QuadratureSpec::for_model_space(config.n(), config.r())
}

#[test]
fn basis_matches_written_out_formula() {
    let poles = [c(0.3, 0.1), c(-0.5, 0.2), c(0.0, -0.7), c(0.6, 0.0)];
    let config = PoleConfiguration::from_complex(&poles).unwrap();
    let basis = build_basis(&config, &spec_for(&config)).unwrap();
    for z in [c(0.2, -0.4), c(1.0, 0.0), Complex64::from_polar(1.0, 2.1), c(-0.9, 0.1)] {
        for k in 0..4 {
            assert!((basis.eval(k, z) - mw_element(&poles, k, z)).norm() < 1e-14);
        }
    }
}

#[test]
fn basis_derivative_matches_finite_difference() {
    let poles = [c(0.3, 0.1), c(-0.5, 0.2), c(0.0, -0.7)];
    let config = PoleConfiguration::from_complex(&poles).unwrap();
    let basis = build_basis(&config, &spec_for(&config)).unwrap();
    let z = c(0.1, 0.35);
    let h = 1e-5;
    for k in 0..3 {
        let fd = (mw_element(&poles, k, z + h) - mw_element(&poles, k, z - h)) / (2.0 * h);
        assert!((basis.eval_derivative(k, z) - fd).norm() < 1e-8, "k={k}");
    }
}

#[test]
fn two_zero_poles_give_diag_zero_one() {
    let config = PoleConfiguration::zeros(2).unwrap();
    let gram = derivative_gram(&build_basis(&config, &spec_for(&config)).unwrap());
    // e_1 = 1, e_2 = -z
    for (i, e) in [0.0, 0.0, 0.0, 1.0].iter().enumerate() {
        assert!((gram.matrix.as_slice()[i] - c(*e, 0.0)).norm() < 1e-14);
    }
}

#[test]
fn confluent_second_element_derivative() {
    let config = PoleConfiguration::confluent_real(2, 0.5).unwrap();
    let gram = derivative_gram(&build_basis(&config, &spec_for(&config)).unwrap());
    assert!((gram.matrix.get(1, 1).re - 3.5 / 0.5625).abs() < 1e-12);
    // e_1 = sqrt(3/4) / (1 - z/2): ‖e_1'‖^2 = (3/4)(1/4)(1 + 1/4)/(3/4)^3
    assert!((gram.matrix.get(0, 0).re - 5.0 / 9.0).abs() < 1e-13);
}

#[test]
fn orthonormal_basis_for_assorted_configurations() {
    let configs = [
        vec![c(0.9, 0.0); 5],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.5)],
        vec![c(0.85, 0.1), c(-0.2, 0.8), c(0.0, -0.3), c(0.4, 0.4), c(-0.7, -0.1)],
    ];
    for poles in configs {
        let config = PoleConfiguration::from_complex(&poles).unwrap();
        let basis = build_basis(&config, &spec_for(&config)).unwrap();
        assert!(element_gram(&basis).identity_defect() < 1e-12);
    }
}

#[test]
fn operator_norm_matches_kernel_oracle() {
    let cases: [&[Complex64]; 4] = [
        &[c(0.3, 0.0), c(-0.4, 0.2)],
        &[c(0.5, 0.1), c(-0.3, -0.4), c(0.1, 0.6)],
        &[c(0.7, 0.0), c(0.0, 0.7), c(-0.7, 0.0), c(0.0, -0.7)],
        &[c(0.2, 0.2), c(-0.6, 0.1), c(0.3, -0.5), c(0.8, 0.05), c(-0.1, -0.85)],
    ];
    for poles in cases {
        let config = PoleConfiguration::from_complex(poles).unwrap();
        let got = operator_norm(&config).unwrap().norm;
        let oracle = kernel_span_norm(poles);
        assert!((got - oracle).abs() <= 1e-8 * oracle.max(1.0), "{got} vs {oracle}");
    }
}

#[test]
fn structured_gram_matches_quadrature() {
    for (n, r) in [(1usize, 0.5), (3, 0.2), (12, 0.8), (40, 0.6)] {
        let config = PoleConfiguration::confluent_real(n, r).unwrap();
        let quad = derivative_gram(&build_basis(&config, &spec_for(&config)).unwrap()).matrix;
        let exact = structured_derivative_gram(n, r).unwrap();
        let scale = exact.diagonal().iter().cloned().fold(1.0, f64::max);
        for (a, b) in quad.as_slice().iter().zip(exact.as_slice()) {
            assert!((a - b).norm() <= 1e-11 * scale, "n={n} r={r}");
        }
    }
}

#[test]
fn explicit_and_convolution_expansions_agree() {
    let coords: Vec<Complex64> = (0..9).map(|k| c((k as f64).sin(), 0.3 * k as f64 - 1.0)).collect();
    for r in [0.0, 0.35, 0.8] {
        let a = derivative_term_coefficients(r, &coords);
        let b = derivative_term_coefficients_explicit(r, &coords).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-13);
        }
    }
    assert!(derivative_term_coefficients_explicit(0.5, &coords[..3]).is_err());
}

#[test]
fn kernel_term_has_expected_shape() {
    let coords = [c(1.0, 0.0), c(2.0, 0.0)];
    let k = kernel_term_coefficients(0.5, &coords);
    // r (1 - r v)(1 + 2 v) = 0.5 + 0.75 v - 0.5 v^2
    let expected = [0.5, 0.75, -0.5];
    for (x, e) in k.iter().zip(expected) {
        assert!((x - c(e, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn derivative_expansion_residuals_are_small() {
    let coords: Vec<Complex64> = (0..7).map(|k| c(1.0 / (k + 1) as f64, (k as f64).cos())).collect();
    for r in [0.0, 0.3, 0.7] {
        let config = PoleConfiguration::confluent_real(7, r).unwrap();
        let res = verify_derivative_expansion(&config, &coords).unwrap();
        assert!(res.pointwise < 1e-12 && res.integral < 1e-12, "{res:?}");
    }
    let mixed = PoleConfiguration::from_complex(&[c(0.3, 0.0), c(0.4, 0.0)]).unwrap();
    assert!(verify_derivative_expansion(&mixed, &coords[..2]).is_err());
    let complex = PoleConfiguration::confluent(2, DiscPoint::new(c(0.0, 0.3)).unwrap()).unwrap();
    assert!(verify_derivative_expansion(&complex, &coords[..2]).is_err());
}

#[test]
fn test_function_norm_and_shape() {
    let coords = test_function_coordinates(8, 2).unwrap();
    let signs: Vec<f64> = coords.iter().map(|z| z.re).collect();
    assert_eq!(signs, vec![0.0, 0.0, 0.0, 1.0, -1.0, 1.0, -1.0, 1.0]);
    let config = PoleConfiguration::confluent_real(30, 0.6).unwrap();
    let f = test_function(&config, 4).unwrap();
    assert!((space_norm(&f, Space::H2).powi(2) - 7.0).abs() < 1e-10);
    assert!(test_function_coordinates(10, 3).is_err());
    assert!(test_function_coordinates(5, 4).is_err());
}

#[test]
fn quadratic_form_matches_derivative_norm() {
    let poles = [c(0.4, -0.2), c(0.1, 0.7), c(-0.6, 0.0)];
    let config = PoleConfiguration::from_complex(&poles).unwrap();
    let spec = spec_for(&config);
    let basis = build_basis(&config, &spec).unwrap();
    let gram = derivative_gram(&basis).matrix;
    let coords = [c(0.5, 1.0), c(-1.0, 0.25), c(0.0, -2.0)];
    let f = basis.combination(&coords).unwrap();
    let lhs = space_norm(&derivative(&f), Space::H2).powi(2);
    assert!((lhs - gram.quadratic_form(&coords)).abs() < 1e-10 * lhs);
}

#[test]
fn top_eigenvector_attains_the_norm() {
    let poles = [c(0.2, 0.3), c(0.8, -0.1), c(-0.5, -0.5), c(0.0, 0.0)];
    let config = PoleConfiguration::from_complex(&poles).unwrap();
    let basis = build_basis(&config, &spec_for(&config)).unwrap();
    let gram = derivative_gram(&basis).matrix;
    let top = largest_eigenpair(&gram, 1e-10, 40).unwrap();
    let f = basis.combination(&top.vector).unwrap();
    let ratio = space_norm(&derivative(&f), Space::H2) / space_norm(&f, Space::H2);
    assert!((ratio - top.value.sqrt()).abs() < 1e-9 * ratio);
    assert!((norm_from_gram(&gram, 0).unwrap().norm - ratio).abs() < 1e-9 * ratio);
    let ev = common::hermitian_eigenvalues(4, gram.as_slice());
    assert!((ev[3] - top.value).abs() < 1e-10 * top.value);
}

#[test]
fn norm_is_stable_under_grid_refinement() {
    let config = PoleConfiguration::from_complex(&[c(0.9, 0.0), c(0.0, 0.85), c(-0.3, 0.3)]).unwrap();
    let base = operator_norm(&config).unwrap();
    let fine = operator_norm_with(&config, &QuadratureSpec::with_samples(4 * base.sample_count).unwrap()).unwrap();
    assert!((base.norm - fine.norm).abs() < 1e-10 * fine.norm);
}

#[test]
fn undersized_grid_is_rejected() {
    let config = PoleConfiguration::confluent_real(64, 0.95).unwrap();
    let spec = QuadratureSpec::with_samples(64).unwrap();
    assert!(build_basis(&config, &spec).is_err());
}

#[test]
fn monomial_norms() {
    for n in [1usize, 2, 5, 17] {
        let norm = operator_norm(&PoleConfiguration::zeros(n).unwrap()).unwrap().norm;
        assert!((norm - (n - 1) as f64).abs() < 1e-10);
    }
}

#[test]
fn single_pole_matches_series() {
    // ‖e_1'‖^2 = (1 - t) t sum (k+1)^2 t^k with t = |l|^2
    for lambda in [c(0.5, 0.0), c(0.0, -0.9), Complex64::from_polar(0.3, 0.4)] {
        let t = lambda.norm_sqr();
        let series: f64 = (0..4000).map(|k| ((k + 1) as f64).powi(2) * t.powi(k)).sum();
        let expected = ((1.0 - t) * t * series).sqrt();
        let got = operator_norm(&PoleConfiguration::from_complex(&[lambda]).unwrap()).unwrap().norm;
        assert!((got - expected).abs() < 1e-10, "{got} vs {expected}");
    }
}

#[test]
fn basis_is_orthogonal_to_b_times_monomials() {
    let poles = [c(0.6, 0.2), c(-0.3, 0.5), c(0.1, -0.8), c(0.0, 0.0)];
    let config = PoleConfiguration::from_complex(&poles).unwrap();
    let spec = spec_for(&config);
    let basis = build_basis(&config, &spec).unwrap();
    let grid = spec.grid();
    let m = grid.len() as f64;
    for k in 0..4 {
        for power in 0..4 {
            // (e_k, B z^m) = mean e_k conj(B z^m)
            let ip: Complex64 = grid
                .iter()
                .map(|&z| basis.eval(k, z) * (kbnorm::blaschke_eval(&config, z).unwrap() * z.powu(power)).conj())
                .sum::<Complex64>()
                / m;
            assert!(ip.norm() < 1e-10, "k={k} m={power}");
        }
    }
}

#[test]
fn single_pole_grid_matches_corrected_closed_form() {
    for i in 0..50 {
        let modulus = 0.95 * (i as f64 + 0.5) / 50.0;
        let lambda = Complex64::from_polar(modulus, 0.37 * i as f64);
        let t = lambda.norm_sqr();
        let expected = modulus * (1.0 + t).sqrt() / (1.0 - t);
        let got = operator_norm(&PoleConfiguration::from_complex(&[lambda]).unwrap()).unwrap().norm;
        assert!((got - expected).abs() < 1e-10, "lambda={lambda}");
    }
}

#[test]
fn two_by_two_norm_matches_explicit_eigenvalue() {
    let config = PoleConfiguration::confluent_real(2, 0.5).unwrap();
    let gram = derivative_gram(&build_basis(&config, &spec_for(&config)).unwrap()).matrix;
    let (a, d, b) = (gram.get(0, 0).re, gram.get(1, 1).re, gram.get(0, 1).norm());
    let top = 0.5 * (a + d) + (0.25 * (a - d).powi(2) + b * b).sqrt();
    assert!((operator_norm(&config).unwrap().norm - top.sqrt()).abs() < 1e-12);
}

#[test]
fn expansion_examples() {
    let one = [c(1.0, 0.0)];
    let res = verify_derivative_expansion(&PoleConfiguration::confluent_real(1, 0.5).unwrap(), &one).unwrap();
    assert!(res.pointwise <= 1e-10 && res.integral <= 1e-10);
    let mut last = vec![c(0.0, 0.0); 8];
    last[7] = c(1.0, 0.0);
    let res = verify_derivative_expansion(&PoleConfiguration::confluent_real(8, 0.3).unwrap(), &last).unwrap();
    assert!(res.pointwise <= 1e-9 && res.integral <= 1e-9);
    let coords: Vec<Complex64> = (0..16).map(|k| Complex64::from_polar(1.0, 1.3 * k as f64)).collect();
    let res = verify_derivative_expansion(&PoleConfiguration::confluent_real(16, 0.7).unwrap(), &coords).unwrap();
    assert!(res.pointwise <= 1e-8 && res.integral <= 1e-8);
}

#[test]
fn test_function_examples() {
    let f = test_function(&PoleConfiguration::confluent_real(10, 0.5).unwrap(), 2).unwrap();
    assert!((space_norm(&f, Space::H2).powi(2) - 5.0).abs() < 1e-10);
    let f = test_function(&PoleConfiguration::confluent_real(4, 0.5).unwrap(), 0).unwrap();
    assert!((space_norm(&f, Space::H2).powi(2) - 3.0).abs() < 1e-10);
    let mixed = PoleConfiguration::from_complex(&[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.4, 0.0)]).unwrap();
    assert!(test_function(&mixed, 0).is_err());
}

#[test]
fn zero_poles_give_monomials() {
    let config = PoleConfiguration::zeros(5).unwrap();
    let basis = build_basis(&config, &spec_for(&config)).unwrap();
    for k in 0..5 {
        let f = basis.element(k).unwrap();
        let mags: Vec<f64> = f.taylor()[..6].iter().map(|x| x.norm()).collect();
        for (j, m) in mags.iter().enumerate() {
            assert!((m - if j == k { 1.0 } else { 0.0 }).abs() < 1e-14);
        }
    }
}
