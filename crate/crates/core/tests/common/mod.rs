#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `sum_{m>=1} m^2 t^m = t (1 + t) / (1 - t)^3`.
pub fn squared_weight_series(t: Complex64) -> Complex64 {
    let one = c(1.0, 0.0);
    t * (one + t) / ((one - t) * (one - t) * (one - t))
}

/// `‖D‖` on the span of Szego kernels at distinct points, from exact kernel
/// inner products: largest eigenvalue of `L^{-1} D L^{-*}` with `K = L L^*`.
pub fn kernel_span_norm(points: &[Complex64]) -> f64 {
    let n = points.len();
    let one = c(1.0, 0.0);
    let k = DMatrix::from_fn(n, n, |i, j| one / (one - points[j].conj() * points[i]));
    let d = DMatrix::from_fn(n, n, |i, j| squared_weight_series(points[j].conj() * points[i]));
    let l = k.cholesky().expect("kernel Gram is positive definite").l();
    let y = l.solve_lower_triangular(&d).expect("invertible");
    let m = l.solve_lower_triangular(&y.adjoint()).expect("invertible").adjoint();
    let m = (&m + m.adjoint()) * c(0.5, 0.0);
    m.symmetric_eigenvalues().iter().cloned().fold(f64::NEG_INFINITY, f64::max).sqrt()
}

/// `sqrt(1 - |l|^2) / (1 - conj(l) z) * prod_{j<k} (l_j - z) / (1 - conj(l_j) z)`, written out.
pub fn mw_element(poles: &[Complex64], k: usize, z: Complex64) -> Complex64 {
    let one = c(1.0, 0.0);
    let mut v = (1.0 - poles[k].norm_sqr()).sqrt() / (one - poles[k].conj() * z);
    for l in &poles[..k] {
        v *= (l - z) / (one - l.conj() * z);
    }
    v
}

/// Dense eigenvalues of a Hermitian matrix given row-major.
pub fn hermitian_eigenvalues(n: usize, rows: &[Complex64]) -> Vec<f64> {
    let m = DMatrix::from_row_slice(n, n, rows);
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
