//! Resolvent kernels of `H`, `P` and `Q`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barrier::{energy_point, PhysicalConfig, I};
use crate::eigenfunctions::{Eigenfunction, EigenfunctionId, Family, Side};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, AdaptiveOptions};
use crate::test_space::{apply_operator, Observable, Smooth};

/// Below this `|T|` the unified kernel is declared singular.
pub const TRANSMISSION_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GreenRegion {
    LeftHalf,
    FirstQuadrant,
    FourthQuadrant,
    UnifiedK,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenEvaluation {
    pub x: f64,
    pub x_prime: f64,
    pub e: Complex64,
    /// Set for the wavenumber form.
    pub k: Option<Complex64>,
    pub value: Complex64,
    pub region: GreenRegion,
}

/// `G(x, x') = factor * u_<(min) u_>(max)` at one spectral point.
#[derive(Debug, Clone)]
pub struct GreenKernel {
    pub region: GreenRegion,
    pub e: Complex64,
    pub k: Option<Complex64>,
    lower: Eigenfunction,
    upper: Eigenfunction,
    factor: Complex64,
}

/// Region of the cut plane that `e` falls in, or `OnCut`.
pub fn classify(e: Complex64) -> Result<GreenRegion> {
    if e.re < 0.0 {
        Ok(GreenRegion::LeftHalf)
    } else if e.im > 0.0 {
        Ok(GreenRegion::FirstQuadrant)
    } else if e.im < 0.0 {
        Ok(GreenRegion::FourthQuadrant)
    } else {
        Err(Error::OnCut { re: e.re, im: e.im })
    }
}

impl GreenKernel {
    pub fn new(cfg: &PhysicalConfig, e: Complex64) -> Result<Self> {
        let region = classify(e)?;
        let ep = energy_point(cfg, e);
        let (family, sign) = match region {
            GreenRegion::LeftHalf => (Family::Tilde, Complex64::new(-2.0 * PI, 0.0)),
            GreenRegion::FirstQuadrant => (Family::Plus, 2.0 * PI / I),
            _ => (Family::Minus, -2.0 * PI / I),
        };
        let lower = Eigenfunction::new(cfg, EigenfunctionId::new(family, Side::Right, ep))?;
        let upper = Eigenfunction::new(cfg, EigenfunctionId::new(family, Side::Left, ep))?;
        let factor = sign / lower.coefficients.t;
        Ok(Self {
            region,
            e,
            k: None,
            lower,
            upper,
            factor,
        })
    }

    /// Kernel continued in the wavenumber; equals the resolvent for
    /// `Im k > 0`.
    pub fn from_wavenumber(cfg: &PhysicalConfig, k: Complex64) -> Result<Self> {
        let lower = Eigenfunction::new(cfg, EigenfunctionId::at_wavenumber(cfg, Family::Plus, Side::Right, k))?;
        let upper = Eigenfunction::new(cfg, EigenfunctionId::at_wavenumber(cfg, Family::Plus, Side::Left, k))?;
        let t = lower.coefficients.t;
        if t.norm() < TRANSMISSION_FLOOR {
            return Err(Error::TransmissionZero { modulus: t.norm() });
        }
        Ok(Self {
            region: GreenRegion::UnifiedK,
            e: cfg.energy_of(k),
            k: Some(k),
            lower,
            upper,
            factor: 2.0 * PI / I / t,
        })
    }

    pub fn eval(&self, x: f64, xp: f64) -> Complex64 {
        let (lo, hi) = if x <= xp { (x, xp) } else { (xp, x) };
        self.factor * self.lower.eval(lo) * self.upper.eval(hi)
    }

    pub fn evaluation(&self, x: f64, xp: f64) -> GreenEvaluation {
        GreenEvaluation {
            x,
            x_prime: xp,
            e: self.e,
            k: self.k,
            value: self.eval(x, xp),
            region: self.region,
        }
    }
}

pub fn green(cfg: &PhysicalConfig, x: f64, xp: f64, e: Complex64) -> Result<GreenEvaluation> {
    Ok(GreenKernel::new(cfg, e)?.evaluation(x, xp))
}

pub fn green_k(cfg: &PhysicalConfig, x: f64, xp: f64, k: Complex64) -> Result<GreenEvaluation> {
    Ok(GreenKernel::from_wavenumber(cfg, k)?.evaluation(x, xp))
}

/// `(z - Q)^{-1}` has kernel `delta(x - x') / (z - x)`; only the scalar and
/// the location of the delta are stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaKernel {
    pub at: f64,
    pub scalar: Complex64,
}

impl DeltaKernel {
    /// `x' -> integral of kernel(x, x') phi(x') dx'`.
    pub fn apply(&self, phi: impl Fn(f64) -> Complex64) -> Complex64 {
        self.scalar * phi(self.at)
    }
}

/// Resolvent of `Q`; `x'` only fixes where the delta sits and must equal `x`
/// for a nonzero kernel, so it is not taken as an argument.
pub fn resolvent_q_kernel(x: f64, z: Complex64) -> Result<DeltaKernel> {
    if z.im == 0.0 {
        return Err(Error::RealSpectralParameter);
    }
    Ok(DeltaKernel {
        at: x,
        scalar: 1.0 / (z - x),
    })
}

/// Kernel of `(p - P)^{-1}`, supported on `x > x'` for `Im p > 0` and on
/// `x < x'` for `Im p < 0`.
pub fn resolvent_p_kernel(cfg: &PhysicalConfig, x: f64, xp: f64, p: Complex64) -> Result<Complex64> {
    let wave = || (I * p * (x - xp) / cfg.hbar).exp() / (I * cfg.hbar);
    if p.im > 0.0 {
        Ok(if x > xp { wave() } else { Complex64::default() })
    } else if p.im < 0.0 {
        Ok(if x < xp { -wave() } else { Complex64::default() })
    } else {
        Err(Error::RealSpectralParameter)
    }
}

/// Probe positions for resolvent checks: two outside on each side, one
/// just outside each edge and three inside.
pub fn resolvent_probes(cfg: &PhysicalConfig) -> [f64; 7] {
    let (a, b, l) = (cfg.a, cfg.b, cfg.width());
    [
        a - 1.5,
        a - 0.05,
        a + 0.25 * l,
        a + 0.5 * l,
        a + 0.75 * l,
        b + 0.05,
        b + 1.5,
    ]
}

/// `max_x |integral G(x,x';e) [(e - H) phi](x') dx' - phi(x)| / max|phi|`
/// over [`resolvent_probes`].
pub fn verify_resolvent(cfg: &PhysicalConfig, phi: &impl Smooth, e: Complex64) -> Result<f64> {
    let kernel = GreenKernel::new(cfg, e)?;
    let h_phi = apply_operator(cfg, phi, Observable::H);
    let source = |x: f64| e * phi.value(x) - h_phi.value(x);
    let (lo, hi) = phi.support();
    let probes = resolvent_probes(cfg);
    let peak = probes
        .iter()
        .map(|&x| phi.value(x).norm())
        .chain((0..=200).map(|i| phi.value(lo + (hi - lo) * i as f64 / 200.0).norm()))
        .fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(0.0);
    }
    let opts = AdaptiveOptions {
        abs_tol: 1e-9 * peak,
        rel_tol: 1e-8,
        max_segments: 20000,
    };
    let mut worst = 0.0f64;
    for x in probes {
        let integral = integrate_adaptive(|xp| kernel.eval(x, xp) * source(xp), lo, hi, &[cfg.a, cfg.b, x], opts)?;
        worst = worst.max((integral - phi.value(x)).norm());
    }
    Ok(worst / peak)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn region_dispatch() {
        assert_eq!(classify(c(-1.0, 0.0)).unwrap(), GreenRegion::LeftHalf);
        assert_eq!(classify(c(-1.0, 2.0)).unwrap(), GreenRegion::LeftHalf);
        assert_eq!(classify(c(1.0, 2.0)).unwrap(), GreenRegion::FirstQuadrant);
        assert_eq!(classify(c(0.0, -2.0)).unwrap(), GreenRegion::FourthQuadrant);
        assert!(matches!(classify(c(3.0, 0.0)), Err(Error::OnCut { .. })));
        assert!(matches!(classify(c(0.0, 0.0)), Err(Error::OnCut { .. })));
    }

    #[test]
    fn q_kernel_examples() {
        let k = resolvent_q_kernel(1.0, I).unwrap();
        let phi = |x: f64| c(x * x + 1.0, 0.5);
        assert!((k.apply(phi) - phi(1.0) / (I - 1.0)).norm() < 1e-15);
        assert!(((I - 1.0) * k.apply(phi) - phi(1.0)).norm() < 1e-15);
        let k = resolvent_q_kernel(2.0, c(2.0, 1.0)).unwrap();
        assert!((k.scalar - c(0.0, -1.0)).norm() < 1e-15);
        assert!(resolvent_q_kernel(0.0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn p_kernel_examples() {
        let cfg = PhysicalConfig::default();
        assert_eq!(resolvent_p_kernel(&cfg, 0.0, 1.0, I).unwrap(), c(0.0, 0.0));
        let v = resolvent_p_kernel(&cfg, 1.0, 0.0, I).unwrap();
        assert!((v - c(0.0, -(-1.0f64).exp())).norm() < 1e-15);
        assert_eq!(resolvent_p_kernel(&cfg, 1.0, 0.0, -I).unwrap(), c(0.0, 0.0));
        assert!(resolvent_p_kernel(&cfg, 1.0, 0.0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn transmission_floor_is_enforced() {
        // T vanishes linearly at threshold and is tiny under an opaque barrier.
        let cfg = PhysicalConfig::new(1.0, 1.0, 50.0, 0.0, 2.0).unwrap();
        assert!(matches!(
            GreenKernel::from_wavenumber(&cfg, c(1e-6, 0.0)),
            Err(Error::TransmissionZero { .. })
        ));
        assert!(GreenKernel::from_wavenumber(&cfg, c(1.0, 0.0)).is_ok());
    }
}
