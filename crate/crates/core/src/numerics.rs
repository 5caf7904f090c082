use num_complex::Complex64;

const PAIRWISE_BLOCK: usize = 32;

/// Pairwise summation with a fixed split order, so results do not depend on
/// how the caller produced the slice.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
}

/// Smallest power of two that is `>= x` (and at least 1).
pub fn next_power_of_two(x: f64) -> usize {
    let mut m = 1usize;
    while (m as f64) < x {
        m <<= 1;
    }
    m
}

/// `M`-th roots of unity `exp(2 pi i m / M)`.
pub fn circle_grid(m: usize) -> Vec<Complex64> {
    let step = 2.0 * std::f64::consts::PI / m as f64;
    (0..m).map(|j| Complex64::from_polar(1.0, step * j as f64)).collect()
}
