//! Piecewise scattering eigenfunctions, plane waves and Wronskians.
//!
//! Outside the barrier every solution is `grow * e^{lambda x} + decay * e^{-lambda x}`
//! with `lambda = i k` for the plus and minus families and `lambda = k_tilde`
//! for the tilde family. Inside, the solution is written in Cauchy form
//! anchored on the transmitted edge, which is exact and avoids cancellation
//! between the two interior exponentials when the barrier is opaque.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barrier::{branch_sqrt, energy_point, EnergyPoint, PhysicalConfig, I};
use crate::coefficients::{plus_coefficients, star_coefficients, tilde_coefficients, CoefficientSet};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Plus,
    Minus,
    Tilde,
}

/// Side the incident wave arrives from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionId {
    pub family: Family,
    pub side: Side,
    pub ep: EnergyPoint,
}

impl EigenfunctionId {
    pub fn new(family: Family, side: Side, ep: EnergyPoint) -> Self {
        Self { family, side, ep }
    }

    pub fn at_energy(cfg: &PhysicalConfig, family: Family, side: Side, e: Complex64) -> Self {
        Self::new(family, side, energy_point(cfg, e))
    }

    /// Identity parameterised by a wavenumber anywhere in the complex plane.
    pub fn at_wavenumber(cfg: &PhysicalConfig, family: Family, side: Side, k: Complex64) -> Self {
        Self::new(family, side, EnergyPoint::from_wavenumber(cfg, k))
    }
}

/// Anything with an analytic value and first derivative.
pub trait Differentiable {
    fn value_and_derivative(&self, x: f64) -> (Complex64, Complex64);

    fn value(&self, x: f64) -> Complex64 {
        self.value_and_derivative(x).0
    }
}

impl<F> Differentiable for F
where
    F: Fn(f64) -> (Complex64, Complex64),
{
    fn value_and_derivative(&self, x: f64) -> (Complex64, Complex64) {
        self(x)
    }
}

/// `f g' - f' g` at `x`.
pub fn wronskian<F: Differentiable + ?Sized, G: Differentiable + ?Sized>(f: &F, g: &G, x: f64) -> Complex64 {
    let (fv, fd) = f.value_and_derivative(x);
    let (gv, gd) = g.value_and_derivative(x);
    fv * gd - fd * gv
}

/// Exterior piece `grow e^{lambda x} + decay e^{-lambda x}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExteriorPiece {
    pub grow: Complex64,
    pub decay: Complex64,
}

impl ExteriorPiece {
    fn eval(&self, lambda: Complex64, x: f64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut v, mut d) = (zero, zero);
        // Zero amplitudes are skipped so an overflowing exponential never
        // meets a zero coefficient.
        if self.grow != zero {
            let g = self.grow * (lambda * x).exp();
            v += g;
            d += lambda * g;
        }
        if self.decay != zero {
            let g = self.decay * (-lambda * x).exp();
            v += g;
            d -= lambda * g;
        }
        (v, d)
    }
}

/// `v cos(Q s) + d sin(Q s) / Q` with `s = x - anchor`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct InteriorPiece {
    anchor: f64,
    q: Complex64,
    v: Complex64,
    d: Complex64,
}

fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

impl InteriorPiece {
    fn eval(&self, x: f64) -> (Complex64, Complex64) {
        let s = x - self.anchor;
        let qs = self.q * s;
        let cs = qs.cos();
        let sn = sinc(qs);
        (
            self.v * cs + self.d * s * sn,
            -self.v * self.q * self.q * s * sn + self.d * cs,
        )
    }
}

/// A fully evaluated eigenfunction; construction does all coefficient work
/// so repeated pointwise evaluation is cheap.
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    pub id: EigenfunctionId,
    pub coefficients: CoefficientSet,
    a: f64,
    b: f64,
    lambda: Complex64,
    prefactor: Complex64,
    left: ExteriorPiece,
    right: ExteriorPiece,
    interior: InteriorPiece,
}

impl Eigenfunction {
    pub fn new(cfg: &PhysicalConfig, id: EigenfunctionId) -> Result<Self> {
        let ep = id.ep;
        let (coefficients, lambda, kn) = match id.family {
            Family::Plus => (plus_coefficients(cfg, &ep)?, I * ep.k, ep.k),
            Family::Minus => (star_coefficients(cfg, &ep)?, I * ep.k, ep.k),
            Family::Tilde => (tilde_coefficients(cfg, &ep)?, ep.k_tilde, ep.k_tilde),
        };
        let c = &coefficients;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let piece = |grow, decay| ExteriorPiece { grow, decay };
        let (left, right) = match (id.family, id.side) {
            (Family::Plus, Side::Right) => (piece(zero, c.t), piece(c.r_r, one)),
            (Family::Plus, Side::Left) => (piece(one, c.r_l), piece(c.t, zero)),
            (Family::Minus, Side::Right) => (piece(c.t, zero), piece(one, c.r_r)),
            (Family::Minus, Side::Left) => (piece(c.r_l, one), piece(zero, c.t)),
            (Family::Tilde, Side::Right) => (piece(c.t, zero), piece(one, c.r_r)),
            (Family::Tilde, Side::Left) => (piece(c.r_l, one), piece(zero, c.t)),
        };

        let prefactor = branch_sqrt(Complex64::new(cfg.m, 0.0) / (2.0 * PI * kn * cfg.hbar * cfg.hbar));

        // Interior wavenumber squared is s (E - V0) in every family.
        let k2 = match id.family {
            Family::Tilde => -(ep.k_tilde * ep.k_tilde),
            _ => ep.k * ep.k,
        };
        let q = (k2 - cfg.energy_scale() * cfg.v0).sqrt();
        let (anchor, (v, d)) = match id.side {
            Side::Right => (cfg.a, left.eval(lambda, cfg.a)),
            Side::Left => (cfg.b, right.eval(lambda, cfg.b)),
        };

        Ok(Self {
            id,
            coefficients,
            a: cfg.a,
            b: cfg.b,
            lambda,
            prefactor,
            left,
            right,
            interior: InteriorPiece { anchor, q, v, d },
        })
    }

    /// Exponent `lambda` of the exterior pieces.
    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }

    /// Exterior amplitudes `(left, right)` without the prefactor.
    pub fn exterior(&self) -> (ExteriorPiece, ExteriorPiece) {
        (self.left, self.right)
    }

    /// Value and derivative taken from a named piece, ignoring where `x` is.
    /// Used to check matching at the edges.
    pub fn piece_eval(&self, region: Region, x: f64) -> (Complex64, Complex64) {
        let (v, d) = match region {
            Region::Left => self.left.eval(self.lambda, x),
            Region::Middle => self.interior.eval(x),
            Region::Right => self.right.eval(self.lambda, x),
        };
        (self.prefactor * v, self.prefactor * d)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.value_and_derivative(x).0
    }

    /// Upper bound on `|chi|` over the whole line. Only exists when the
    /// exterior pieces are bounded, i.e. for real `k`.
    pub fn sup_bound(&self) -> Option<f64> {
        if self.lambda.re != 0.0 {
            return None;
        }
        let ext = |p: &ExteriorPiece| p.grow.norm() + p.decay.norm();
        // |sin(Qs)/Q| <= s cosh(|Im Q| s) and |cos(Qs)| <= cosh(|Im Q| s).
        let l = self.b - self.a;
        let inner = (self.interior.v.norm() + self.interior.d.norm() * l) * (self.interior.q.im.abs() * l).cosh();
        Some(self.prefactor.norm() * ext(&self.left).max(ext(&self.right)).max(inner))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Left,
    Middle,
    Right,
}

impl Differentiable for Eigenfunction {
    fn value_and_derivative(&self, x: f64) -> (Complex64, Complex64) {
        let region = if x < self.a {
            Region::Left
        } else if x > self.b {
            Region::Right
        } else {
            Region::Middle
        };
        self.piece_eval(region, x)
    }
}

/// Pointwise eigenfunction value. Prefer [`Eigenfunction`] for many points.
pub fn chi(cfg: &PhysicalConfig, id: EigenfunctionId, x: f64) -> Result<Complex64> {
    Ok(Eigenfunction::new(cfg, id)?.eval(x))
}

pub fn chi_tilde(cfg: &PhysicalConfig, side: Side, ep: EnergyPoint, x: f64) -> Result<Complex64> {
    chi(cfg, EigenfunctionId::new(Family::Tilde, side, ep), x)
}

/// `<x|p> = (2 pi hbar)^{-1/2} e^{i p x / hbar}`.
pub fn plane_wave(cfg: &PhysicalConfig, x: f64, p: f64) -> Complex64 {
    Complex64::from_polar((2.0 * PI * cfg.hbar).powf(-0.5), p * x / cfg.hbar)
}

/// `sqrt(hbar^2 k / m)` times the energy-normalised eigenfunction.
pub fn k_normalization(cfg: &PhysicalConfig, k: Complex64) -> Complex64 {
    branch_sqrt(cfg.hbar * cfg.hbar * k / cfg.m)
}

pub fn k_normalized_chi(cfg: &PhysicalConfig, id: EigenfunctionId, x: f64) -> Result<Complex64> {
    Ok(k_normalization(cfg, id.ep.k) * chi(cfg, id, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_case_is_plane_wave() {
        let cfg = PhysicalConfig::default().with_v0(0.0);
        let id = EigenfunctionId::at_energy(&cfg, Family::Plus, Side::Left, c(2.0, 0.0));
        let f = Eigenfunction::new(&cfg, id).unwrap();
        let k = 2.0;
        let pre = (1.0 / (2.0 * PI * k)).sqrt();
        for x in [-3.0, 0.0, 0.4, 1.0, 5.0] {
            let want = Complex64::from_polar(pre, k * x);
            assert!((f.eval(x) - want).norm() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn plane_wave_values() {
        let cfg = PhysicalConfig::default();
        let n = (2.0 * PI).powf(-0.5);
        assert!((plane_wave(&cfg, 0.0, 3.7) - c(n, 0.0)).norm() < 1e-15);
        assert!((plane_wave(&cfg, 2.1, 0.0) - c(n, 0.0)).norm() < 1e-15);
        assert!((plane_wave(&cfg, PI, 1.0) - c(-n, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn self_wronskian_vanishes() {
        let cfg = PhysicalConfig::default();
        let id = EigenfunctionId::at_energy(&cfg, Family::Plus, Side::Right, c(3.0, 1.0));
        let f = Eigenfunction::new(&cfg, id).unwrap();
        for x in [-1.0, 0.5, 2.0] {
            assert_eq!(wronskian(&f, &f, x), c(0.0, 0.0));
        }
    }

    #[test]
    fn edges_use_middle_piece() {
        let cfg = PhysicalConfig::default();
        let id = EigenfunctionId::at_energy(&cfg, Family::Plus, Side::Left, c(5.0, 0.0));
        let f = Eigenfunction::new(&cfg, id).unwrap();
        assert_eq!(f.eval(cfg.a), f.piece_eval(Region::Middle, cfg.a).0);
        assert_eq!(f.eval(cfg.b), f.piece_eval(Region::Middle, cfg.b).0);
    }
}
