//! Sampled functions on quadrature grids, and the grid recipe shared by the
//! transforms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barrier::PhysicalConfig;
use crate::error::{Error, Result};
use crate::quadrature::composite_rule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Position,
    Momentum,
    Energy,
    Wavenumber,
}

/// Values on quadrature nodes. `weights` integrate over `window`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub axis: Axis,
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub weights: Vec<f64>,
    pub window: (f64, f64),
}

impl SampledFunction {
    pub fn new(
        axis: Axis,
        grid: Vec<f64>,
        values: Vec<Complex64>,
        weights: Vec<f64>,
        window: (f64, f64),
    ) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples, got {}",
                grid.len()
            )));
        }
        if values.len() != grid.len() || weights.len() != grid.len() {
            return Err(Error::InvalidGrid("grid, values and weights differ in length".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("grid must be strictly increasing".into()));
        }
        if !(window.0 <= grid[0] && window.1 >= grid[grid.len() - 1]) {
            return Err(Error::InvalidGrid("window does not cover the grid".into()));
        }
        Ok(Self {
            axis,
            grid,
            values,
            weights,
            window,
        })
    }

    /// Samples `f` on a ready-made rule.
    pub fn from_fn(
        axis: Axis,
        rule: &(Vec<f64>, Vec<f64>),
        window: (f64, f64),
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        let values = rule.0.iter().map(|&x| f(x)).collect();
        Self::new(axis, rule.0.clone(), values, rule.1.clone(), window)
    }

    pub fn norm(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `(self, other)`, antilinear in `self`. Both must share the grid.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("inner product needs a common grid".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .zip(&self.weights)
            .map(|((a, b), w)| a.conj() * b * *w)
            .sum())
    }

    /// Relative L2 distance `||self - other|| / ||other||` on a common grid.
    pub fn relative_distance(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("distance needs a common grid".into()));
        }
        let diff: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .zip(&self.weights)
            .map(|((a, b), w)| w * (a - b).norm_sqr())
            .sum();
        let base = other.norm();
        Ok(if base == 0.0 { diff.sqrt() } else { diff.sqrt() / base })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Grid recipe for one transform computation.
///
/// Every integral is a composite 16-point Gauss–Legendre rule. Panel widths
/// keep the phase swept per panel at or below 10 radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub x_window: (f64, f64),
    pub k_max: f64,
    pub x_panel: f64,
    pub k_panel: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl QuadratureSpec {
    /// `resolution` caps the position panel width, e.g. to resolve a narrow
    /// envelope that oscillates slower than `k_max` suggests.
    pub fn new(cfg: &PhysicalConfig, x_window: (f64, f64), k_max: f64, resolution: f64) -> Result<Self> {
        let (lo, hi) = x_window;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidGrid(format!("bad window ({lo}, {hi})")));
        }
        if !(k_max > 0.0 && k_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("k_max must be positive, got {k_max}")));
        }
        let reach = lo.abs().max(hi.abs());
        let f = 2.0 * reach + 2.0 * cfg.a.abs().max(cfg.b.abs());
        Ok(Self {
            x_window,
            k_max,
            x_panel: (10.0 / k_max).min(resolution),
            k_panel: (10.0 / f).min(1.0),
            abs_tol: 1e-10,
            rel_tol: 1e-6,
        })
    }

    /// Smallest spec serving every member of a family of specs.
    pub fn union(specs: &[QuadratureSpec], cfg: &PhysicalConfig) -> Result<Self> {
        let first = specs
            .first()
            .ok_or_else(|| Error::InvalidGrid("no specs to merge".into()))?;
        let lo = specs.iter().map(|s| s.x_window.0).fold(first.x_window.0, f64::min);
        let hi = specs.iter().map(|s| s.x_window.1).fold(first.x_window.1, f64::max);
        let k_max = specs.iter().map(|s| s.k_max).fold(0.0, f64::max);
        let res = specs.iter().map(|s| s.x_panel).fold(f64::INFINITY, f64::min);
        let mut out = Self::new(cfg, (lo, hi), k_max, res)?;
        out.abs_tol = specs.iter().map(|s| s.abs_tol).fold(f64::INFINITY, f64::min);
        out.rel_tol = specs.iter().map(|s| s.rel_tol).fold(f64::INFINITY, f64::min);
        Ok(out)
    }

    pub fn with_window(mut self, cfg: &PhysicalConfig, x_window: (f64, f64)) -> Result<Self> {
        let fresh = Self::new(cfg, x_window, self.k_max, self.x_panel)?;
        self.x_window = x_window;
        self.k_panel = fresh.k_panel;
        Ok(self)
    }

    pub fn x_rule(&self, cfg: &PhysicalConfig) -> (Vec<f64>, Vec<f64>) {
        composite_rule(self.x_window.0, self.x_window.1, &[cfg.a, cfg.b], self.x_panel)
    }

    pub fn k_rule(&self) -> (Vec<f64>, Vec<f64>) {
        composite_rule(0.0, self.k_max, &[], self.k_panel)
    }

    /// Symmetric momentum rule on `[-hbar k_max, hbar k_max]`.
    pub fn p_rule(&self, cfg: &PhysicalConfig) -> (Vec<f64>, Vec<f64>) {
        let reach = self.x_window.0.abs().max(self.x_window.1.abs());
        let p_max = cfg.hbar * self.k_max;
        composite_rule(-p_max, p_max, &[0.0], 10.0 * cfg.hbar / reach)
    }
}
