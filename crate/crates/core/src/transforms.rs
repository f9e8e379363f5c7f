//! The transforms that diagonalise `H`, their inverses, the Fourier
//! transform and the checks built on them.
//!
//! Energy integrals are carried out in the wavenumber, `dE = (hbar^2 k / m) dk`.
//! Spectral data is first computed against the k-normalised eigenfunctions,
//! which stay finite down to `k = 0`, then rescaled to the energy axis.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::barrier::{EnergyPoint, PhysicalConfig, I};
use crate::eigenfunctions::{Eigenfunction, EigenfunctionId, Family, Side};
use crate::error::{Error, Result};
use crate::sampled::{Axis, QuadratureSpec, SampledFunction};
use crate::test_space::{apply_operator, apply_word, inner_product, Observable, Smooth, TestFunction};

/// Spectral data in the two scattering channels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoComponentSpectralFunction {
    /// Energy or wavenumber.
    pub axis: Axis,
    pub family: Family,
    pub grid: Vec<f64>,
    /// Quadrature weights for integrals over `grid`.
    pub weights: Vec<f64>,
    pub left_values: Vec<Complex64>,
    pub right_values: Vec<Complex64>,
    /// Wavenumber of every node, whatever the axis.
    pub wavenumbers: Vec<f64>,
}

/// `sqrt(hbar^2 k / m)`, the density converting energy data to wavenumber data.
fn jacobian(cfg: &PhysicalConfig, k: f64) -> f64 {
    (cfg.hbar * cfg.hbar * k / cfg.m).sqrt()
}

impl TwoComponentSpectralFunction {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// `sum_side integral |f_side|^2`.
    pub fn norm_sqr(&self) -> f64 {
        (0..self.len())
            .map(|i| self.weights[i] * (self.left_values[i].norm_sqr() + self.right_values[i].norm_sqr()))
            .sum()
    }

    /// `(self, other)` summed over both channels, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.same_grid(other)?;
        Ok((0..self.len())
            .map(|i| {
                let l = self.left_values[i].conj() * other.left_values[i];
                let r = self.right_values[i].conj() * other.right_values[i];
                (l + r) * self.weights[i]
            })
            .sum())
    }

    /// `||self - other|| / ||other||` over both channels.
    pub fn relative_distance(&self, other: &Self) -> Result<f64> {
        self.same_grid(other)?;
        let diff: f64 = (0..self.len())
            .map(|i| {
                let l = (self.left_values[i] - other.left_values[i]).norm_sqr();
                let r = (self.right_values[i] - other.right_values[i]).norm_sqr();
                (l + r) * self.weights[i]
            })
            .sum();
        let base = other.norm_sqr();
        Ok(if base == 0.0 { diff.sqrt() } else { (diff / base).sqrt() })
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.axis != other.axis || self.grid != other.grid {
            return Err(Error::InvalidGrid("spectral functions live on different grids".into()));
        }
        Ok(())
    }

    /// Same data on the energy axis.
    pub fn to_energy(&self, cfg: &PhysicalConfig) -> Self {
        if self.axis == Axis::Energy {
            return self.clone();
        }
        let mut out = self.clone();
        out.axis = Axis::Energy;
        for (i, &k) in self.wavenumbers.iter().enumerate() {
            let j = jacobian(cfg, k);
            out.grid[i] = cfg.energy_of(k.into()).re;
            out.weights[i] = self.weights[i] * j * j;
            out.left_values[i] /= j;
            out.right_values[i] /= j;
        }
        out
    }

    /// Same data on the wavenumber axis.
    pub fn to_wavenumber(&self, cfg: &PhysicalConfig) -> Self {
        if self.axis == Axis::Wavenumber {
            return self.clone();
        }
        let mut out = self.clone();
        out.axis = Axis::Wavenumber;
        for (i, &k) in self.wavenumbers.iter().enumerate() {
            let j = jacobian(cfg, k);
            out.grid[i] = k;
            out.weights[i] = self.weights[i] / (j * j);
            out.left_values[i] *= j;
            out.right_values[i] *= j;
        }
        out
    }

    /// Multiplies both channels pointwise by `f(grid value)`.
    pub fn map_values(mut self, f: impl Fn(f64) -> Complex64) -> Self {
        for i in 0..self.len() {
            let s = f(self.grid[i]);
            self.left_values[i] *= s;
            self.right_values[i] *= s;
        }
        self
    }

    /// Root of the fraction of `norm_sqr` carried above `0.9 k_max`.
    pub fn tail_fraction(&self) -> f64 {
        let k_max = self.wavenumbers.iter().copied().fold(0.0, f64::max);
        let total = self.norm_sqr();
        if total == 0.0 {
            return 0.0;
        }
        let tail: f64 = (0..self.len())
            .filter(|&i| self.wavenumbers[i] > 0.9 * k_max)
            .map(|i| self.weights[i] * (self.left_values[i].norm_sqr() + self.right_values[i].norm_sqr()))
            .sum();
        (tail / total).sqrt()
    }
}

fn check_family(family: Family) -> Result<()> {
    if family == Family::Tilde {
        return Err(Error::InvalidArgument("transforms use the plus or minus family".into()));
    }
    Ok(())
}

fn check_axis(f: &SampledFunction, axis: Axis) -> Result<()> {
    if f.axis != axis {
        return Err(Error::InvalidGrid(format!(
            "expected a {axis:?} function, got {:?}",
            f.axis
        )));
    }
    Ok(())
}

/// Left and right eigenfunctions at every wavenumber.
fn eigenbasis(cfg: &PhysicalConfig, family: Family, ks: &[f64]) -> Result<Vec<[Eigenfunction; 2]>> {
    ks.par_iter()
        .map(|&k| {
            let ep = EnergyPoint::from_wavenumber(cfg, k.into());
            Ok([
                Eigenfunction::new(cfg, EigenfunctionId::new(family, Side::Left, ep))?,
                Eigenfunction::new(cfg, EigenfunctionId::new(family, Side::Right, ep))?,
            ])
        })
        .collect()
}

/// Samples a smooth function on the position rule of `spec`.
pub fn sample_on(cfg: &PhysicalConfig, phi: &impl Smooth, spec: &QuadratureSpec) -> Result<SampledFunction> {
    SampledFunction::from_fn(Axis::Position, &spec.x_rule(cfg), spec.x_window, |x| phi.value(x))
}

/// Components `integral phi(x) conj(<x|k>) dx` against k-normalised
/// eigenfunctions, on the wavenumber rule of `spec`.
pub fn wavenumber_transform(
    cfg: &PhysicalConfig,
    phi: &SampledFunction,
    family: Family,
    spec: &QuadratureSpec,
) -> Result<TwoComponentSpectralFunction> {
    check_family(family)?;
    check_axis(phi, Axis::Position)?;
    let (ks, wk) = spec.k_rule();
    let basis = eigenbasis(cfg, family, &ks)?;
    let live: Vec<(f64, Complex64)> = phi
        .grid
        .iter()
        .zip(&phi.values)
        .zip(&phi.weights)
        .filter(|((_, v), _)| **v != Complex64::default())
        .map(|((&x, &v), &w)| (x, v * w))
        .collect();
    let (left, right): (Vec<_>, Vec<_>) = basis
        .par_iter()
        .zip(&ks)
        .map(|(pair, &k)| {
            let j = jacobian(cfg, k);
            let mut l = Complex64::default();
            let mut r = Complex64::default();
            for &(x, vw) in &live {
                l += vw * pair[0].eval(x).conj();
                r += vw * pair[1].eval(x).conj();
            }
            (l * j, r * j)
        })
        .unzip();
    Ok(TwoComponentSpectralFunction {
        axis: Axis::Wavenumber,
        family,
        grid: ks.clone(),
        weights: wk,
        left_values: left,
        right_values: right,
        wavenumbers: ks,
    })
}

/// `f_side(E) = integral phi(x) conj(chi_side(x; E)) dx` on the energies of
/// the wavenumber rule of `spec`.
pub fn forward_energy(
    cfg: &PhysicalConfig,
    phi: &SampledFunction,
    family: Family,
    spec: &QuadratureSpec,
) -> Result<TwoComponentSpectralFunction> {
    Ok(wavenumber_transform(cfg, phi, family, spec)?.to_energy(cfg))
}

fn check_tail(f: &TwoComponentSpectralFunction, spec: &QuadratureSpec) -> Result<()> {
    let fraction = f.tail_fraction();
    if fraction > spec.rel_tol {
        return Err(Error::TailMass {
            fraction,
            tolerance: spec.rel_tol,
        });
    }
    Ok(())
}

/// `sum_side integral f_side <x|side>` at arbitrary points.
pub fn reconstruct_points(
    cfg: &PhysicalConfig,
    f: &TwoComponentSpectralFunction,
    xs: &[f64],
) -> Result<Vec<Complex64>> {
    check_family(f.family)?;
    let g = f.to_wavenumber(cfg);
    let basis = eigenbasis(cfg, g.family, &g.wavenumbers)?;
    let terms: Vec<(f64, Complex64, Complex64)> = (0..g.len())
        .map(|i| {
            let s = g.weights[i] * jacobian(cfg, g.wavenumbers[i]);
            (s, g.left_values[i], g.right_values[i])
        })
        .collect();
    Ok(xs
        .par_iter()
        .map(|&x| {
            terms
                .iter()
                .zip(&basis)
                .filter(|(t, _)| t.1 != Complex64::default() || t.2 != Complex64::default())
                .map(|(&(s, l, r), pair)| (l * pair[0].eval(x) + r * pair[1].eval(x)) * s)
                .sum()
        })
        .collect())
}

/// `phi(x) = sum_side integral dE f_side(E) chi_side(x; E)` on the position
/// rule of `spec`. Accepts data on either axis.
pub fn inverse_energy(
    cfg: &PhysicalConfig,
    f: &TwoComponentSpectralFunction,
    spec: &QuadratureSpec,
) -> Result<SampledFunction> {
    check_tail(f, spec)?;
    let (xs, wx) = spec.x_rule(cfg);
    let values = reconstruct_points(cfg, f, &xs)?;
    SampledFunction::new(Axis::Position, xs, values, wx, spec.x_window)
}

/// Inverse of [`wavenumber_transform`]; the same map as [`inverse_energy`].
pub fn inverse_wavenumber(
    cfg: &PhysicalConfig,
    f: &TwoComponentSpectralFunction,
    spec: &QuadratureSpec,
) -> Result<SampledFunction> {
    inverse_energy(cfg, f, spec)
}

/// Energy data of the free particle, read off the Fourier transform:
/// the channel moving right sees `p = hbar k`, the other `p = -hbar k`.
pub fn free_energy_reference(
    cfg: &PhysicalConfig,
    phi: &SampledFunction,
    family: Family,
    spec: &QuadratureSpec,
) -> Result<TwoComponentSpectralFunction> {
    check_family(family)?;
    check_axis(phi, Axis::Position)?;
    let (ks, wk) = spec.k_rule();
    // The minus family swaps which channel carries e^{ikx}.
    let sign = if family == Family::Plus { 1.0 } else { -1.0 };
    let (left, right): (Vec<_>, Vec<_>) = ks
        .par_iter()
        .map(|&k| {
            let p = cfg.hbar * k;
            let s = (cfg.m / (cfg.hbar * k)).sqrt();
            (s * fourier_at(cfg, phi, sign * p), s * fourier_at(cfg, phi, -sign * p))
        })
        .unzip();
    Ok(TwoComponentSpectralFunction {
        axis: Axis::Energy,
        family,
        grid: ks.iter().map(|&k| cfg.energy_of(k.into()).re).collect(),
        weights: ks
            .iter()
            .zip(&wk)
            .map(|(&k, &w)| w * jacobian(cfg, k).powi(2))
            .collect(),
        left_values: left,
        right_values: right,
        wavenumbers: ks,
    })
}

fn fourier_at(cfg: &PhysicalConfig, phi: &SampledFunction, p: f64) -> Complex64 {
    let norm = (2.0 * PI * cfg.hbar).powf(-0.5);
    phi.grid
        .iter()
        .zip(&phi.values)
        .zip(&phi.weights)
        .map(|((&x, &v), &w)| v * Complex64::from_polar(w, -p * x / cfg.hbar))
        .sum::<Complex64>()
        * norm
}

/// `(2 pi hbar)^{-1/2} integral phi(x) e^{-ipx/hbar} dx` on the momentum rule of `spec`.
pub fn fourier(cfg: &PhysicalConfig, phi: &SampledFunction, spec: &QuadratureSpec) -> Result<SampledFunction> {
    check_axis(phi, Axis::Position)?;
    let (ps, wp) = spec.p_rule(cfg);
    let values = ps.par_iter().map(|&p| fourier_at(cfg, phi, p)).collect();
    let p_max = cfg.hbar * spec.k_max;
    SampledFunction::new(Axis::Momentum, ps, values, wp, (-p_max, p_max))
}

/// `(2 pi hbar)^{-1/2} integral phi_hat(p) e^{ipx/hbar} dp` at one point.
pub fn fourier_reconstruct_at(cfg: &PhysicalConfig, phi_hat: &SampledFunction, x: f64) -> Result<Complex64> {
    check_axis(phi_hat, Axis::Momentum)?;
    let norm = (2.0 * PI * cfg.hbar).powf(-0.5);
    Ok(phi_hat
        .grid
        .iter()
        .zip(&phi_hat.values)
        .zip(&phi_hat.weights)
        .map(|((&p, &v), &w)| v * Complex64::from_polar(w, p * x / cfg.hbar))
        .sum::<Complex64>()
        * norm)
}

pub fn inverse_fourier(
    cfg: &PhysicalConfig,
    phi_hat: &SampledFunction,
    spec: &QuadratureSpec,
) -> Result<SampledFunction> {
    check_axis(phi_hat, Axis::Momentum)?;
    let (xs, wx) = spec.x_rule(cfg);
    let values = xs
        .par_iter()
        .map(|&x| fourier_reconstruct_at(cfg, phi_hat, x))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(Axis::Position, xs, values, wx, spec.x_window)
}

/// Grid recipe serving every function in `phis`.
pub fn joint_spec(cfg: &PhysicalConfig, phis: &[&TestFunction]) -> Result<QuadratureSpec> {
    let specs = phis
        .iter()
        .map(|p| p.quadrature_spec(cfg))
        .collect::<Result<Vec<_>>>()?;
    QuadratureSpec::union(&specs, cfg)
}

/// Pointwise reconstruction of `phi(x)` from its energy data.
pub fn reconstruct_at(cfg: &PhysicalConfig, phi: &TestFunction, x: f64, family: Family) -> Result<Complex64> {
    let spec = phi.quadrature_spec(cfg)?;
    let f = forward_energy(cfg, &sample_on(cfg, phi, &spec)?, family, &spec)?;
    check_tail(&f, &spec)?;
    Ok(reconstruct_points(cfg, &f, &[x])?[0])
}

/// `max |U(H phi) - E U(phi)| / max |U(H phi)|` over the energy grid and both channels.
pub fn diagonalization_check(cfg: &PhysicalConfig, phi: &TestFunction, family: Family) -> Result<f64> {
    let spec = phi.quadrature_spec(cfg)?;
    let h_phi = apply_operator(cfg, phi, Observable::H);
    let f = forward_energy(cfg, &sample_on(cfg, phi, &spec)?, family, &spec)?;
    let g = forward_energy(cfg, &sample_on(cfg, &h_phi, &spec)?, family, &spec)?;
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for i in 0..f.len() {
        let e = f.grid[i];
        worst = worst
            .max((g.left_values[i] - e * f.left_values[i]).norm())
            .max((g.right_values[i] - e * f.right_values[i]).norm());
        scale = scale.max(g.left_values[i].norm()).max(g.right_values[i].norm());
    }
    Ok(if scale == 0.0 { 0.0 } else { worst / scale })
}

/// One inner product computed in four representations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParsevalValues {
    pub position: Complex64,
    pub energy_plus: Complex64,
    pub energy_minus: Complex64,
    pub momentum: Complex64,
}

impl ParsevalValues {
    pub fn max_spread(&self) -> f64 {
        let v = [self.position, self.energy_plus, self.energy_minus, self.momentum];
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in i + 1..4 {
                worst = worst.max((v[i] - v[j]).norm());
            }
        }
        worst
    }
}

/// `(phi, psi)` in position, energy (both families) and momentum space.
pub fn parseval_check(cfg: &PhysicalConfig, phi: &TestFunction, psi: &TestFunction) -> Result<ParsevalValues> {
    let spec = joint_spec(cfg, &[phi, psi])?;
    let (sp, ss) = (sample_on(cfg, phi, &spec)?, sample_on(cfg, psi, &spec)?);
    let energy = |family| -> Result<Complex64> {
        forward_energy(cfg, &sp, family, &spec)?.inner(&forward_energy(cfg, &ss, family, &spec)?)
    };
    Ok(ParsevalValues {
        position: inner_product(cfg, phi, psi),
        energy_plus: energy(Family::Plus)?,
        energy_minus: energy(Family::Minus)?,
        momentum: fourier(cfg, &sp, &spec)?.inner(&fourier(cfg, &ss, &spec)?)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentValues {
    /// `(phi, A^n psi)` with `A` applied in position space.
    pub direct: Complex64,
    /// The same number from the representation diagonalising `A`.
    pub spectral: Complex64,
    /// `||phi|| ||A^n psi||`, which bounds both.
    pub scale: f64,
}

impl MomentValues {
    pub fn relative_gap(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            (self.direct - self.spectral).norm() / self.scale
        }
    }
}

/// `(phi, A^n psi)` directly and via the spectral representation of `A`:
/// energy for `H`, momentum for `P`, position for `Q`.
pub fn moment_check(
    cfg: &PhysicalConfig,
    phi: &TestFunction,
    psi: &TestFunction,
    n: u8,
    observable: Observable,
) -> Result<MomentValues> {
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidArgument(format!("moment order must be 1 or 2, got {n}")));
    }
    let image = apply_word(cfg, psi, &vec![observable; n as usize]);
    let direct = inner_product(cfg, phi, &image);
    let scale = (inner_product(cfg, phi, phi).re * inner_product(cfg, &image, &image).re).sqrt();
    let spec = joint_spec(cfg, &[phi, psi])?;
    let (sp, ss) = (sample_on(cfg, phi, &spec)?, sample_on(cfg, psi, &spec)?);
    let power = |a: f64| Complex64::new(a.powi(n as i32), 0.0);
    let spectral = match observable {
        Observable::H => {
            let f = forward_energy(cfg, &sp, Family::Plus, &spec)?;
            let g = forward_energy(cfg, &ss, Family::Plus, &spec)?.map_values(power);
            f.inner(&g)?
        }
        Observable::P => {
            let f = fourier(cfg, &sp, &spec)?;
            let mut g = fourier(cfg, &ss, &spec)?;
            for (v, &p) in g.values.iter_mut().zip(&g.grid) {
                *v *= power(p);
            }
            f.inner(&g)?
        }
        Observable::Q => {
            let mut g = ss.clone();
            for (v, &x) in g.values.iter_mut().zip(&g.grid) {
                *v *= power(x);
            }
            sp.inner(&g)?
        }
    };
    Ok(MomentValues {
        direct,
        spectral,
        scale,
    })
}

/// Unitary time evolution `e^{-iEt/hbar}` applied to energy data.
pub fn evolve(cfg: &PhysicalConfig, f: &TwoComponentSpectralFunction, t: f64) -> TwoComponentSpectralFunction {
    let hbar = cfg.hbar;
    let energies: Vec<f64> = f.wavenumbers.iter().map(|&k| cfg.energy_of(k.into()).re).collect();
    let mut out = f.clone();
    for (i, e) in energies.iter().enumerate() {
        let phase = (-I * e * t / hbar).exp();
        out.left_values[i] *= phase;
        out.right_values[i] *= phase;
    }
    out
}
