//! Scattering data as the barrier height goes to zero.

use serde::{Deserialize, Serialize};

use crate::barrier::{EnergyPoint, PhysicalConfig};
use crate::coefficients::plus_coefficients;
use crate::eigenfunctions::Family;
use crate::error::{Error, Result};
use crate::test_space::{default_sigma, make_test_function};
use crate::transforms::{forward_energy, free_energy_reference, sample_on};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeLimitRow {
    pub v0: f64,
    /// `max |T - 1|` over `k` in `[0.5, 10]`.
    pub max_t_defect: f64,
    /// `max |R_l|` over the same wavenumbers.
    pub max_r_left: f64,
    /// Relative L2 distance between plus-family energy data and the
    /// Fourier-derived free data of a packet
    /// arriving from the left. Its spectrum avoids `k = 0`, where `R_l -> -1`
    /// for every positive `V0`.
    pub transform_distance: f64,
}

pub const DEFAULT_SEQUENCE: [f64; 4] = [1.0, 0.1, 0.01, 1e-4];

/// One row per barrier height; `v0s` must be non-negative and strictly decreasing.
pub fn free_limit(base: &PhysicalConfig, v0s: &[f64]) -> Result<Vec<FreeLimitRow>> {
    if v0s.is_empty() || v0s.iter().any(|&v| v.is_nan() || v < 0.0) || v0s.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "V0 sequence must be non-negative and strictly decreasing".into(),
        ));
    }
    let ks: Vec<f64> = (0..200).map(|i| 0.5 + 9.5 * i as f64 / 199.0).collect();
    v0s.iter()
        .map(|&v0| {
            let cfg = base.with_v0(v0);
            let (mut max_t_defect, mut max_r_left) = (0.0f64, 0.0f64);
            for &k in &ks {
                let c = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, k.into()))?;
                max_t_defect = max_t_defect.max((c.t - 1.0).norm());
                max_r_left = max_r_left.max(c.r_l.norm());
            }
            let phi = make_test_function(&cfg, cfg.a - 8.0, 1.0, 4.0 * cfg.hbar, default_sigma(&cfg))?;
            let spec = phi.quadrature_spec(&cfg)?;
            let s = sample_on(&cfg, &phi, &spec)?;
            let u = forward_energy(&cfg, &s, Family::Plus, &spec)?;
            let reference = free_energy_reference(&cfg, &s, Family::Plus, &spec)?;
            Ok(FreeLimitRow {
                v0,
                max_t_defect,
                max_r_left,
                transform_distance: u.relative_distance(&reference)?,
            })
        })
        .collect()
}

/// True when every column decreases along the rows.
pub fn is_monotone(rows: &[FreeLimitRow]) -> bool {
    rows.windows(2).all(|w| {
        w[1].max_t_defect < w[0].max_t_defect
            && w[1].max_r_left < w[0].max_r_left
            && w[1].transform_distance < w[0].transform_distance
    })
}
