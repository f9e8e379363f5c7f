//! Barrier geometry, the fixed square-root branch and the energy to
//! wavenumber maps every other module builds on.
//!
//! The branch maps the cut plane `-pi < arg z <= pi` onto the closed right
//! half-plane `-pi/2 < arg w <= pi/2`. Points on the negative real axis
//! (including those carrying a negative-zero imaginary part) are treated as
//! having `arg z = pi` and map onto the positive imaginary axis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Square root on the branch `(-pi, pi] -> (-pi/2, pi/2]`.
///
/// Satisfies `conj(branch_sqrt(conj z)) == branch_sqrt(z)` off the negative
/// real axis.
pub fn branch_sqrt(z: Complex64) -> Complex64 {
    let (re, im) = (z.re, z.im);
    if re == 0.0 && im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let modulus = z.norm();
    if re >= 0.0 {
        let t = ((modulus + re) * 0.5).sqrt();
        Complex64::new(t, im / (2.0 * t))
    } else {
        let t = ((modulus - re) * 0.5).sqrt();
        // `im < 0.0` is false for -0.0, which keeps the cut on arg = +pi.
        let sign = if im < 0.0 { -1.0 } else { 1.0 };
        Complex64::new(im.abs() / (2.0 * t), sign * t)
    }
}

/// Mass, reduced Planck constant, barrier height and edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConfig {
    pub m: f64,
    pub hbar: f64,
    pub v0: f64,
    pub a: f64,
    pub b: f64,
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        Self {
            m: 1.0,
            hbar: 1.0,
            v0: 10.0,
            a: 0.0,
            b: 1.0,
        }
    }
}

impl PhysicalConfig {
    /// Validated constructor. `v0 == 0` is accepted as the free limit.
    pub fn new(m: f64, hbar: f64, v0: f64, a: f64, b: f64) -> Result<Self> {
        let cfg = Self { m, hbar, v0, a, b };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.m, self.hbar, self.v0, self.a, self.b]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidConfig("parameters must be finite".into()));
        }
        if self.m <= 0.0 {
            return Err(Error::InvalidConfig(format!("mass must be positive, got {}", self.m)));
        }
        if self.hbar <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "hbar must be positive, got {}",
                self.hbar
            )));
        }
        if self.v0 < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "barrier height must be non-negative (wells are not supported), got {}",
                self.v0
            )));
        }
        if self.b <= self.a {
            return Err(Error::InvalidConfig(format!(
                "right edge b = {} must exceed left edge a = {}",
                self.b, self.a
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// `2m / hbar^2`, the factor turning energies into squared wavenumbers.
    pub fn energy_scale(&self) -> f64 {
        2.0 * self.m / (self.hbar * self.hbar)
    }

    /// Potential value; the edges themselves belong to the barrier.
    pub fn potential(&self, x: f64) -> f64 {
        if x >= self.a && x <= self.b {
            self.v0
        } else {
            0.0
        }
    }

    /// `E = hbar^2 k^2 / 2m`.
    pub fn energy_of(&self, k: Complex64) -> Complex64 {
        k * k / self.energy_scale()
    }

    /// Same configuration with a different barrier height.
    pub fn with_v0(&self, v0: f64) -> Self {
        Self { v0, ..*self }
    }
}

/// An energy together with its derived wavenumbers.
///
/// `k_tilde` and `q_tilde` are always populated; they are the natural
/// variables only when `Re e < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyPoint {
    pub e: Complex64,
    pub k: Complex64,
    pub q: Complex64,
    pub k_tilde: Complex64,
    pub q_tilde: Complex64,
}

/// Derived wavenumbers of `e` on the fixed branch.
pub fn energy_point(cfg: &PhysicalConfig, e: Complex64) -> EnergyPoint {
    let s = cfg.energy_scale();
    let shifted = e - cfg.v0;
    EnergyPoint {
        e,
        k: branch_sqrt(e * s),
        q: branch_sqrt(shifted * s),
        k_tilde: branch_sqrt(-e * s),
        q_tilde: branch_sqrt(-shifted * s),
    }
}

impl EnergyPoint {
    /// Point parameterised directly by a wavenumber, which may lie anywhere
    /// in the complex plane (including `Re k < 0`, off the principal sheet).
    ///
    /// `q` is taken on the branch; the coefficient formulas are even in `q`
    /// so the choice of root does not matter. The tilde variables are fixed
    /// by `k_tilde = -i k`, `q_tilde = -i q`.
    pub fn from_wavenumber(cfg: &PhysicalConfig, k: Complex64) -> Self {
        let q = branch_sqrt(k * k - cfg.energy_scale() * cfg.v0);
        EnergyPoint {
            e: cfg.energy_of(k),
            k,
            q,
            k_tilde: -I * k,
            q_tilde: -I * q,
        }
    }

    pub fn real(cfg: &PhysicalConfig, e: f64) -> Self {
        energy_point(cfg, Complex64::new(e, 0.0))
    }
}

/// The root `k` of `k^2 = 2mE/hbar^2` with `Im k > 0`, i.e. the wavenumber on
/// the physical sheet for any `E` off `[0, inf)`.
pub fn physical_wavenumber(cfg: &PhysicalConfig, e: Complex64) -> Complex64 {
    I * branch_sqrt(-e * cfg.energy_scale())
}
