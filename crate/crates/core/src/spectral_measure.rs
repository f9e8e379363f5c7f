//! Theta matrices of the resolvent and the spectral measures recovered from
//! their jump across the real axis.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barrier::{energy_point, PhysicalConfig, I};
use crate::coefficients::{plus_coefficients, star_coefficients, tilde_coefficients};
use crate::error::{Error, Result};
use crate::greens::{classify, GreenRegion};
use crate::quadrature::gl16;

/// Which pair of eigenfunctions the theta matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Outgoing-wave solutions `chi+`.
    Initial,
    /// Incoming-wave solutions `chi-`.
    Final,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaMatrix {
    pub entries: [[Complex64; 2]; 2],
    pub region: GreenRegion,
    pub basis: Basis,
}

type M2 = [[Complex64; 2]; 2];

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn theta_matrix(cfg: &PhysicalConfig, e: Complex64, basis: Basis) -> Result<ThetaMatrix> {
    let region = classify(e)?;
    let ep = energy_point(cfg, e);
    let w = 2.0 * PI / I;
    let z = zero();
    let entries: M2 = match region {
        GreenRegion::LeftHalf => {
            let t = tilde_coefficients(cfg, &ep)?.t;
            [[z, z], [Complex64::new(-2.0 * PI, 0.0) / t, z]]
        }
        GreenRegion::FirstQuadrant => {
            let s = star_coefficients(cfg, &ep)?;
            match basis {
                Basis::Initial => [[w, -w * s.r_l / s.t], [z, z]],
                Basis::Final => [[z, -w * s.r_r / s.t], [z, w]],
            }
        }
        GreenRegion::FourthQuadrant => {
            let p = plus_coefficients(cfg, &ep)?;
            match basis {
                Basis::Initial => [[z, w * p.r_r / p.t], [z, -w]],
                Basis::Final => [[-w, w * p.r_l / p.t], [z, z]],
            }
        }
        GreenRegion::UnifiedK => unreachable!("classify never yields the wavenumber form"),
    };
    Ok(ThetaMatrix { entries, region, basis })
}

/// Measure density at `energy` smeared by `eps`:
/// `[theta(E - i eps) - theta(E + i eps)] / (2 pi i)`.
pub fn jump_density(cfg: &PhysicalConfig, energy: f64, eps: f64, basis: Basis) -> Result<M2> {
    let below = theta_matrix(cfg, Complex64::new(energy, -eps), basis)?.entries;
    let above = theta_matrix(cfg, Complex64::new(energy, eps), basis)?.entries;
    let mut out = [[zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (below[i][j] - above[i][j]) / (2.0 * PI * I);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralMeasureInterval {
    pub e1: f64,
    pub e2: f64,
    pub basis: Basis,
    pub rho: [[f64; 2]; 2],
    /// Largest imaginary part left over after extrapolation.
    pub imag_residual: f64,
}

impl SpectralMeasureInterval {
    /// Smallest eigenvalue of the symmetric part of `rho`.
    pub fn min_eigenvalue(&self) -> f64 {
        let [[a, b], [c, d]] = self.rho;
        let off = 0.5 * (b + c);
        let mean = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + off * off).sqrt();
        mean - rad
    }
}

/// Smearing widths used for extrapolation, largest first.
pub const EPSILONS: [f64; 3] = [1e-3, 1e-4, 1e-5];

fn mat_norm(m: &M2) -> f64 {
    m.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
}

fn combine(a: &M2, fa: f64, b: &M2, fb: f64) -> M2 {
    let mut out = [[zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][j] * fa + b[i][j] * fb;
        }
    }
    out
}

fn integrate_density(cfg: &PhysicalConfig, e1: f64, e2: f64, eps: f64, basis: Basis) -> Result<M2> {
    let length = e2 - e1;
    // 4 panels of 16 nodes per unit energy, doubled until stable.
    let mut panels = ((4.0 * length).ceil() as usize).max(1);
    let integrate = |panels: usize| -> Result<M2> {
        let (gx, gw) = gl16();
        let h = length / panels as f64;
        let mut out = [[zero(); 2]; 2];
        for p in 0..panels {
            let mid = e1 + (p as f64 + 0.5) * h;
            for (x, w) in gx.iter().zip(gw) {
                let m = jump_density(cfg, mid + 0.5 * h * x, eps, basis)?;
                out = combine(&out, 1.0, &m, 0.5 * h * w);
            }
        }
        Ok(out)
    };
    let mut prev = integrate(panels)?;
    for _ in 0..12 {
        panels *= 2;
        let next = integrate(panels)?;
        let diff = combine(&next, 1.0, &prev, -1.0);
        if mat_norm(&diff) < 1e-8 {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureFailure {
        lo: e1,
        hi: e2,
        error: f64::NAN,
        intervals: panels,
    })
}

/// Spectral measure of `(e1, e2)`, extrapolated to zero smearing.
pub fn rho_interval(cfg: &PhysicalConfig, e1: f64, e2: f64, basis: Basis) -> Result<SpectralMeasureInterval> {
    if !(e1.is_finite() && e2.is_finite() && e1 < e2) {
        return Err(Error::InvalidInterval {
            e1,
            e2,
            reason: "need finite e1 < e2".into(),
        });
    }
    if e1 < 0.0 && e2 > 0.0 {
        return Err(Error::InvalidInterval {
            e1,
            e2,
            reason: "interval may not straddle the threshold E = 0".into(),
        });
    }
    let i1 = integrate_density(cfg, e1, e2, EPSILONS[0], basis)?;
    let i2 = integrate_density(cfg, e1, e2, EPSILONS[1], basis)?;
    let i3 = integrate_density(cfg, e1, e2, EPSILONS[2], basis)?;
    let first = mat_norm(&combine(&i2, 1.0, &i1, -1.0));
    let second = mat_norm(&combine(&i3, 1.0, &i2, -1.0));
    if second > first + 1e-14 {
        return Err(Error::ExtrapolationUnstable { first, second });
    }
    let r1a = combine(&i2, 10.0 / 9.0, &i1, -1.0 / 9.0);
    let r1b = combine(&i3, 10.0 / 9.0, &i2, -1.0 / 9.0);
    let r2 = combine(&r1b, 100.0 / 99.0, &r1a, -1.0 / 99.0);
    let mut rho = [[0.0; 2]; 2];
    let mut imag_residual = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            rho[i][j] = r2[i][j].re;
            imag_residual = imag_residual.max(r2[i][j].im.abs());
        }
    }
    Ok(SpectralMeasureInterval {
        e1,
        e2,
        basis,
        rho,
        imag_residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralClass {
    Resolvent,
    Spectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub e: f64,
    pub class: SpectralClass,
    /// Largest entry of the smeared jump density; about 1 on the spectrum
    /// and 0 in the resolvent set. `None` where the density is undefined.
    pub jump: Option<f64>,
}

/// Classifies real energies: the open negative axis is in the resolvent
/// set, `[0, inf)` is spectrum (zero by closure).
pub fn spectrum_verdict(cfg: &PhysicalConfig, e_grid: &[f64]) -> Vec<Verdict> {
    e_grid
        .iter()
        .map(|&e| {
            let jump = jump_density(cfg, e, 1e-8, Basis::Initial).ok().map(|m| mat_norm(&m));
            let class = if e < 0.0 {
                SpectralClass::Resolvent
            } else {
                SpectralClass::Spectrum
            };
            Verdict { e, class, jump }
        })
        .collect()
}
