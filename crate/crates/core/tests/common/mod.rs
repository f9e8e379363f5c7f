#![allow(dead_code)]

pub mod oracles;

use barrier_rhs::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

/// 200 wavenumbers spread evenly over (0.01, 20].
pub fn k_grid() -> Vec<f64> {
    (0..200)
        .map(|i| 0.01 + (20.0 - 0.01) * (i as f64 + 1.0) / 200.0)
        .collect()
}
