//! Largest eigenpair of a dense Hermitian matrix.
//!
//! Householder reduction to a real symmetric tridiagonal matrix, Sturm
//! bisection for the top eigenvalue, inverse iteration for its vector, and a
//! residual check against the original matrix. Every step is sequential and
//! deterministic.

use num_complex::Complex64;

use super::gram::HermitianMatrix;
use crate::error::{KbError, Result};

#[derive(Debug, Clone)]
pub struct TopEigenpair {
    pub value: f64,
    pub vector: Vec<Complex64>,
    /// Inverse-iteration sweeps (bisection has a fixed length and is not counted).
    pub iterations: usize,
    /// `||G v - value v|| / max(|value|, 1)` with `||v|| = 1`.
    pub residual: f64,
}

struct Reflector {
    start: usize,
    tau: Complex64,
    v: Vec<Complex64>,
}

struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
    reflectors: Vec<Reflector>,
}

fn tridiagonalize(matrix: &HermitianMatrix) -> Tridiagonal {
    let n = matrix.dim();
    let mut a: Vec<Complex64> = matrix.as_slice().to_vec();
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));

    for k in 0..n.saturating_sub(1) {
        let start = k + 1;
        let m = n - start;
        let alpha = a[start * n + k];
        let xnorm_sq: f64 = (start + 1..n).map(|i| a[i * n + k].norm_sqr()).sum();

        if xnorm_sq == 0.0 && alpha.im == 0.0 {
            off[k] = alpha.re;
            continue;
        }
        // reflector H = I - tau v v^*, v[0] = 1, with H^* x = beta e_1 and beta real
        let beta = -alpha.re.signum() * (alpha.norm_sqr() + xnorm_sq).sqrt();
        let tau = Complex64::new((beta - alpha.re) / beta, -alpha.im / beta);
        let scale = Complex64::new(1.0, 0.0) / (alpha - beta);
        let mut v = Vec::with_capacity(m);
        v.push(Complex64::new(1.0, 0.0));
        v.extend((start + 1..n).map(|i| a[i * n + k] * scale));
        off[k] = beta;

        // trailing block: A <- A - u v^* - v u^*, u = tau y - (|tau|^2 (v^* y) / 2) v, y = A v
        let y: Vec<Complex64> = (0..m)
            .map(|i| {
                let row = &a[(start + i) * n + start..(start + i) * n + n];
                row.iter().zip(&v).map(|(x, w)| x * w).sum()
            })
            .collect();
        let vy: Complex64 = v.iter().zip(&y).map(|(w, yy)| w.conj() * yy).sum();
        let half = 0.5 * tau.norm_sqr() * vy.re;
        let u: Vec<Complex64> = y.iter().zip(&v).map(|(yy, w)| tau * yy - w * half).collect();
        for i in 0..m {
            let (ui, vi) = (u[i], v[i]);
            let row = &mut a[(start + i) * n + start..(start + i) * n + n];
            for ((x, uj), vj) in row.iter_mut().zip(&u).zip(&v) {
                *x -= ui * vj.conj() + vi * uj.conj();
            }
        }
        reflectors.push(Reflector { start, tau, v });
    }
    for (i, d) in diag.iter_mut().enumerate() {
        *d = a[i * n + i].re;
    }
    Tridiagonal {
        diag,
        off,
        reflectors,
    }
}

/// Number of eigenvalues strictly below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = diag[0] - x;
    for i in 0..diag.len() {
        if i > 0 {
            q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        }
        if q == 0.0 {
            q = -tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn largest_by_bisection(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let span = hi.abs().max(lo.abs()).max(f64::MIN_POSITIVE);
    hi += 4.0 * f64::EPSILON * span;
    lo -= 4.0 * f64::EPSILON * span;
    // largest eigenvalue = inf { x : count(x) = n }
    for _ in 0..256 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * span {
            break;
        }
        if sturm_count(diag, off, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves `(T - shift) x = b` for symmetric tridiagonal `T` by Gaussian
/// elimination with partial pivoting; zero pivots are replaced by `floor`.
fn tridiagonal_solve(diag: &[f64], off: &[f64], shift: f64, b: &[f64], floor: f64) -> Vec<f64> {
    let n = diag.len();
    if n == 1 {
        let p = diag[0] - shift;
        return vec![b[0] / if p.abs() < floor { floor } else { p }];
    }
    // rows of U: (u0, u1, u2) occupy columns i, i+1, i+2
    let mut u0 = vec![0.0; n];
    let mut u1 = vec![0.0; n];
    let mut u2 = vec![0.0; n];
    let mut rhs = b.to_vec();
    let mut cur = [diag[0] - shift, off[0], 0.0];
    for i in 0..n - 1 {
        let below = [off[i], diag[i + 1] - shift, if i + 2 < n { off[i + 1] } else { 0.0 }];
        let (mut top, mut bot) = (cur, below);
        let (mut rt, mut rb) = (rhs[i], rhs[i + 1]);
        // shift `below` to align: below covers columns i, i+1, i+2
        if bot[0].abs() > top[0].abs() {
            std::mem::swap(&mut top, &mut bot);
            std::mem::swap(&mut rt, &mut rb);
        }
        if top[0].abs() < floor {
            top[0] = floor;
        }
        let factor = bot[0] / top[0];
        u0[i] = top[0];
        u1[i] = top[1];
        u2[i] = top[2];
        rhs[i] = rt;
        cur = [bot[1] - factor * top[1], bot[2] - factor * top[2], 0.0];
        rhs[i + 1] = rb - factor * rt;
    }
    u0[n - 1] = if cur[0].abs() < floor { floor } else { cur[0] };
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s -= u1[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= u2[i] * x[i + 2];
        }
        x[i] = s / u0[i];
    }
    x
}

fn tridiagonal_residual(diag: &[f64], off: &[f64], value: f64, x: &[f64]) -> f64 {
    let n = diag.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut tx = diag[i] * x[i];
        if i > 0 {
            tx += off[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            tx += off[i] * x[i + 1];
        }
        worst = worst.max((tx - value * x[i]).abs());
    }
    worst
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

/// Largest eigenvalue and a unit eigenvector of a Hermitian matrix.
///
/// `max_iterations` caps the inverse-iteration sweeps; `tolerance` bounds the
/// relative residual `||G v - lambda v|| / max(|lambda|, 1)`.
pub fn largest_eigenpair(matrix: &HermitianMatrix, tolerance: f64, max_iterations: usize) -> Result<TopEigenpair> {
    let n = matrix.dim();
    if n == 0 {
        return Err(KbError::InvalidArguments("empty matrix".into()));
    }
    let tri = tridiagonalize(matrix);
    let value = largest_by_bisection(&tri.diag, &tri.off);
    let scale = value.abs().max(1.0);
    let norm_t = tri
        .diag
        .iter()
        .map(|d| d.abs())
        .chain(tri.off.iter().map(|e| 2.0 * e.abs()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let floor = f64::EPSILON * norm_t;

    // perturbed start vector avoids being orthogonal to the target
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.01 * ((i * 7919) % 101) as f64 / 101.0).collect();
    normalize(&mut x);
    let mut iterations = 0;
    let mut tri_residual = f64::INFINITY;
    while iterations < max_iterations.max(1) {
        iterations += 1;
        x = tridiagonal_solve(&tri.diag, &tri.off, value, &x, floor);
        normalize(&mut x);
        tri_residual = tridiagonal_residual(&tri.diag, &tri.off, value, &x);
        // a second sweep removes what the first leaves of the other eigenvectors
        if iterations >= 2.min(max_iterations) && tri_residual <= 0.1 * tolerance * scale {
            break;
        }
    }

    let mut vector: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    for refl in tri.reflectors.iter().rev() {
        let tail = &mut vector[refl.start..];
        let proj: Complex64 = refl.v.iter().zip(tail.iter()).map(|(w, y)| w.conj() * y).sum();
        let coef = refl.tau * proj;
        for (y, w) in tail.iter_mut().zip(&refl.v) {
            *y -= coef * w;
        }
    }
    let norm = vector.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    vector.iter_mut().for_each(|c| *c /= norm);

    let gv = matrix.mul_vec(&vector);
    let residual = gv
        .iter()
        .zip(&vector)
        .map(|(g, v)| (g - v * value).norm_sqr())
        .sum::<f64>()
        .sqrt()
        / scale;
    if residual > tolerance {
        return Err(KbError::NoConvergence {
            iterations,
            residual: residual.max(tri_residual / scale),
        });
    }
    Ok(TopEigenpair {
        value,
        vector,
        iterations,
        residual,
    })
}
