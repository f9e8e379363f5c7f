//! Time evolution of a Gaussian packet through the barrier, done in the
//! energy representation of the minus family.

use serde::{Deserialize, Serialize};

use crate::barrier::PhysicalConfig;
use crate::coefficients::transmission;
use crate::eigenfunctions::Family;
use crate::error::{Error, Result};
use crate::sampled::{QuadratureSpec, SampledFunction};
use crate::test_space::{default_sigma, make_test_function, Smooth, TestFunction};
use crate::transforms::{evolve, forward_energy, fourier, inverse_energy, sample_on};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketParams {
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
}

impl PacketParams {
    /// Packet arriving from the left with mean energy `V0 / 2`, ten widths
    /// away from the barrier.
    pub fn half_barrier(cfg: &PhysicalConfig) -> Result<Self> {
        if cfg.v0 <= 0.0 {
            return Err(Error::InvalidArgument("half-barrier packet needs V0 > 0".into()));
        }
        let width = 3.0;
        Ok(Self {
            center: cfg.a - 10.0 * width,
            width,
            momentum: (cfg.m * cfg.v0).sqrt(),
        })
    }

    pub fn velocity(&self, cfg: &PhysicalConfig) -> f64 {
        self.momentum / cfg.m
    }

    /// Time by which the packet has finished interacting with the barrier.
    pub fn late_time(&self, cfg: &PhysicalConfig) -> Result<f64> {
        let v = self.velocity(cfg);
        if v <= 0.0 {
            return Err(Error::InvalidArgument("packet must move towards the barrier".into()));
        }
        Ok(((cfg.a - self.center).abs() + 20.0) / v)
    }

    fn packet(&self, cfg: &PhysicalConfig) -> Result<TestFunction> {
        make_test_function(cfg, self.center, self.width, self.momentum, default_sigma(cfg))
    }

    /// Width after free spreading for time `t`.
    fn width_at(&self, cfg: &PhysicalConfig, t: f64) -> f64 {
        let s = cfg.hbar * t / (cfg.m * self.width * self.width);
        self.width * (1.0 + s * s).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavepacketRun {
    pub params: PacketParams,
    pub times: Vec<f64>,
    /// `phi(x, t)` on the common position rule.
    pub snapshots: Vec<SampledFunction>,
    /// Fraction of the norm beyond `b` at each time.
    pub transmitted: Vec<f64>,
    /// `integral_{p > 0} |T|^2 |phi_hat|^2 dp / ||phi||^2`.
    pub prediction: f64,
    /// Relative L2 distance between the packet and its reconstruction at `t = 0`.
    pub initial_error: f64,
}

impl WavepacketRun {
    pub fn late_transmitted(&self) -> f64 {
        self.transmitted.last().copied().unwrap_or(0.0)
    }
}

/// Evolves the packet to every time in `times` (non-negative).
pub fn run_wavepacket(cfg: &PhysicalConfig, params: PacketParams, times: &[f64]) -> Result<WavepacketRun> {
    if times.is_empty() || times.iter().any(|&t| !(t >= 0.0 && t.is_finite())) {
        return Err(Error::InvalidArgument("times must be finite and non-negative".into()));
    }
    let packet = params.packet(cfg)?;
    let t_max = times.iter().copied().fold(0.0, f64::max);
    let travel = params.velocity(cfg).abs() * t_max;
    let spread = 9.0 * params.width_at(cfg, t_max);
    let (lo0, hi0) = packet.support();
    let window = (lo0.min(cfg.a - travel) - spread, hi0.max(cfg.b + travel) + spread);
    let spec = QuadratureSpec::new(cfg, window, packet.spectral_reach(), packet.resolution())?;

    let initial = sample_on(cfg, &packet, &spec)?;
    let norm2 = initial.norm().powi(2);
    let data = forward_energy(cfg, &initial, Family::Minus, &spec)?;

    let mut snapshots = Vec::with_capacity(times.len());
    let mut transmitted = Vec::with_capacity(times.len());
    let mut initial_error = f64::NAN;
    for &t in times {
        let phi_t = inverse_energy(cfg, &evolve(cfg, &data, t), &spec)?;
        if t == 0.0 {
            initial_error = phi_t.relative_distance(&initial)?;
        }
        let beyond: f64 = phi_t
            .grid
            .iter()
            .zip(&phi_t.values)
            .zip(&phi_t.weights)
            .filter(|((&x, _), _)| x > cfg.b)
            .map(|((_, v), w)| w * v.norm_sqr())
            .sum();
        transmitted.push(beyond / norm2);
        snapshots.push(phi_t);
    }

    let ft = fourier(cfg, &initial, &spec)?;
    let mut prediction = 0.0;
    for ((&p, v), w) in ft.grid.iter().zip(&ft.values).zip(&ft.weights) {
        if p > 0.0 {
            prediction += w * v.norm_sqr() * transmission(cfg, (p / cfg.hbar).into())?.norm_sqr();
        }
    }

    Ok(WavepacketRun {
        params,
        times: times.to_vec(),
        snapshots,
        transmitted,
        prediction: prediction / norm2,
        initial_error,
    })
}
