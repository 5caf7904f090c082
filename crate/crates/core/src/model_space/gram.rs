use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::basis::{eval_prefix, MalmquistWalshBasis};
use crate::blaschke::PoleConfiguration;
use crate::numerics::circle_grid;

const CHUNK_POINTS: usize = 1024;

/// Dense `n x n` complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n, "expected {n}x{n} entries");
        Self { n, data }
    }

    pub fn from_real(n: usize, data: &[f64]) -> Self {
        Self::from_rows(n, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i).re).collect()
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    /// `max |G[i][j] - conj(G[j][i])|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `max |G - I|` entrywise.
    pub fn identity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.get(i, j) - target).norm());
            }
        }
        worst
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `v^* G v / v^* v`.
    pub fn rayleigh_quotient(&self, v: &[Complex64]) -> f64 {
        let gv = self.mul_vec(v);
        let num: Complex64 = v.iter().zip(&gv).map(|(a, b)| a.conj() * b).sum();
        let den: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        num.re / den
    }

    /// `v^* G v` for coordinate vector `v`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> f64 {
        let gv = self.mul_vec(v);
        v.iter().zip(&gv).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
    }

    fn mirror_upper(&mut self) {
        for i in 0..self.n {
            let d = self.data[i * self.n + i];
            self.data[i * self.n + i] = Complex64::new(d.re, 0.0);
            for j in (i + 1)..self.n {
                self.data[j * self.n + i] = self.data[i * self.n + j].conj();
            }
        }
    }
}

/// `G[j][k] = (e_{k+1}', e_{j+1}')_{H^2}`.
#[derive(Debug, Clone, Serialize)]
pub struct DerivativeGram {
    pub matrix: HermitianMatrix,
    pub config: PoleConfiguration,
}

#[derive(Clone, Copy)]
enum Which {
    Values,
    Derivatives,
}

/// Column-split storage of one chunk of samples: `re[k * len + p]`.
struct Chunk {
    len: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

fn sample_chunk(basis: &MalmquistWalshBasis, points: &[Complex64], which: Which) -> Chunk {
    let n = basis.len();
    let len = points.len();
    let per_point: Vec<Vec<Complex64>> = points
        .par_iter()
        .map(|&z| {
            let pv = eval_prefix(basis.config().poles(), n, z);
            match which {
                Which::Values => pv.values,
                Which::Derivatives => pv.derivatives,
            }
        })
        .collect();
    let mut re = vec![0.0; n * len];
    let mut im = vec![0.0; n * len];
    for (p, vals) in per_point.iter().enumerate() {
        for (k, v) in vals.iter().enumerate() {
            re[k * len + p] = v.re;
            im[k * len + p] = v.im;
        }
    }
    Chunk { len, re, im }
}

/// `sum_p conj(a_p) b_p` with four fixed lanes.
fn conj_dot(ar: &[f64], ai: &[f64], br: &[f64], bi: &[f64]) -> (f64, f64) {
    let mut sr = [0.0f64; 4];
    let mut si = [0.0f64; 4];
    let blocks = ar.len() / 4;
    for b in 0..blocks {
        for l in 0..4 {
            let i = 4 * b + l;
            sr[l] += ar[i] * br[i] + ai[i] * bi[i];
            si[l] += ar[i] * bi[i] - ai[i] * br[i];
        }
    }
    for i in 4 * blocks..ar.len() {
        sr[0] += ar[i] * br[i] + ai[i] * bi[i];
        si[0] += ar[i] * bi[i] - ai[i] * br[i];
    }
    ((sr[0] + sr[1]) + (sr[2] + sr[3]), (si[0] + si[1]) + (si[2] + si[3]))
}

/// Quadrature Gram matrix `G[j][k] = mean_p f_k(z_p) conj(f_j(z_p))`.
///
/// Grid chunks are accumulated in a fixed order and each upper-triangle
/// entry is owned by one task, so the result does not depend on the number
/// of threads.
fn assemble(basis: &MalmquistWalshBasis, which: Which) -> HermitianMatrix {
    let n = basis.len();
    let grid = circle_grid(basis.spec().sample_count());
    let mut upper: Vec<Vec<Complex64>> = (0..n).map(|j| vec![Complex64::new(0.0, 0.0); n - j]).collect();
    for points in grid.chunks(CHUNK_POINTS) {
        let chunk = sample_chunk(basis, points, which);
        let len = chunk.len;
        upper.par_iter_mut().enumerate().for_each(|(j, row)| {
            let (ar, ai) = (&chunk.re[j * len..(j + 1) * len], &chunk.im[j * len..(j + 1) * len]);
            for (offset, slot) in row.iter_mut().enumerate() {
                let k = j + offset;
                let (br, bi) = (&chunk.re[k * len..(k + 1) * len], &chunk.im[k * len..(k + 1) * len]);
                let (re, im) = conj_dot(ar, ai, br, bi);
                *slot += Complex64::new(re, im);
            }
        });
    }
    let scale = 1.0 / grid.len() as f64;
    let mut m = HermitianMatrix::zeros(n);
    for (j, row) in upper.iter().enumerate() {
        for (offset, v) in row.iter().enumerate() {
            m.data[j * n + j + offset] = v * scale;
        }
    }
    m.mirror_upper();
    m
}

/// Gram matrix of the basis derivatives, by circle quadrature.
pub fn derivative_gram(basis: &MalmquistWalshBasis) -> DerivativeGram {
    DerivativeGram {
        matrix: assemble(basis, Which::Derivatives),
        config: basis.config().clone(),
    }
}

/// Gram matrix of the basis elements themselves; the identity for an
/// orthonormal basis.
pub fn element_gram(basis: &MalmquistWalshBasis) -> HermitianMatrix {
    assemble(basis, Which::Values)
}
