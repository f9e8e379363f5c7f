//! Closed-form transmission, reflection and interior amplitudes for the
//! three solution families.
//!
//! Each family is evaluated from its own printed expression. The starred
//! family is not obtained by conjugating the plus family; the two only agree
//! for real `k`, and the starred one is used at complex energies below the
//! real axis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barrier::{EnergyPoint, PhysicalConfig, I};
use crate::error::{Error, Result};

/// Below this `|k|` (or `|k_tilde|`) amplitudes are not evaluated.
pub const THRESHOLD_GUARD: f64 = 1e-12;
/// Below this `|q| (b - a)` the interior wavenumber is treated as zero.
pub const DEGENERATE_QL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Plus,
    Star,
    Tilde,
}

/// Interior amplitudes: `a_r`, `b_r` belong to the right-incidence solution,
/// `a_l`, `b_l` to the left-incidence one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InteriorAmplitudes {
    pub a_r: Complex64,
    pub b_r: Complex64,
    pub a_l: Complex64,
    pub b_l: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub family: Family,
    pub t: Complex64,
    pub r_r: Complex64,
    pub r_l: Complex64,
    /// `None` exactly when the interior wavenumber is degenerate. The
    /// interior amplitudes have no finite limit there (the middle piece
    /// becomes linear in `x`), while `t` and both reflections stay finite.
    pub interior: Option<InteriorAmplitudes>,
}

impl CoefficientSet {
    /// `|t|^2 + |r_l|^2 - 1` and `|t|^2 + |r_r|^2 - 1`.
    pub fn unitarity_defects(&self) -> (f64, f64) {
        let t2 = self.t.norm_sqr();
        (t2 + self.r_l.norm_sqr() - 1.0, t2 + self.r_r.norm_sqr() - 1.0)
    }

    pub fn is_degenerate(&self) -> bool {
        self.interior.is_none()
    }
}

fn check_guard(modulus: f64) -> Result<()> {
    if modulus < THRESHOLD_GUARD {
        Err(Error::ZeroWavenumber { modulus })
    } else {
        Ok(())
    }
}

/// Plus or star family; `sigma` is `+1` for plus and `-1` for star, the
/// starred expressions being the plus ones with `i` replaced by `-i`.
fn oscillatory(cfg: &PhysicalConfig, k: Complex64, q: Complex64, sigma: f64, family: Family) -> CoefficientSet {
    let (a, b, l) = (cfg.a, cfg.b, cfg.width());
    let si = I * sigma;
    let e = |z: Complex64| z.exp();

    if q.norm() * l < DEGENERATE_QL {
        let ikl = si * k * l;
        return CoefficientSet {
            family,
            t: 2.0 * e(-ikl) / (2.0 - ikl),
            r_r: e(-2.0 * si * k * b) * ikl / (ikl - 2.0),
            r_l: e(2.0 * si * k * a) * ikl / (ikl - 2.0),
            interior: None,
        };
    }

    let u = q / k;
    let (ep, em) = (e(si * q * l), e(-si * q * l));
    let d = (1.0 - u) * (1.0 - u) * ep - (1.0 + u) * (1.0 + u) * em;
    let refl = (1.0 - u * u) * (ep - em) / d;

    let t = e(-si * k * l) * (-4.0 * u) / d;
    let r_r = e(-2.0 * si * k * b) * refl;
    let r_l = e(2.0 * si * k * a) * refl;
    let a_r = 2.0 * e(-si * k * b) * e(-si * q * a) * (1.0 - u) / d;
    let b_r = -2.0 * e(-si * k * b) * e(si * q * a) * (1.0 + u) / d;
    let a_l = -2.0 * e(si * k * a) * e(-si * q * b) * (1.0 + u) / d;
    let b_l = 2.0 * e(si * k * a) * e(si * q * b) * (1.0 - u) / d;

    CoefficientSet {
        family,
        t,
        r_r,
        r_l,
        interior: Some(InteriorAmplitudes { a_r, b_r, a_l, b_l }),
    }
}

pub fn plus_coefficients(cfg: &PhysicalConfig, ep: &EnergyPoint) -> Result<CoefficientSet> {
    check_guard(ep.k.norm())?;
    Ok(oscillatory(cfg, ep.k, ep.q, 1.0, Family::Plus))
}

pub fn star_coefficients(cfg: &PhysicalConfig, ep: &EnergyPoint) -> Result<CoefficientSet> {
    check_guard(ep.k.norm())?;
    Ok(oscillatory(cfg, ep.k, ep.q, -1.0, Family::Star))
}

pub fn tilde_coefficients(cfg: &PhysicalConfig, ep: &EnergyPoint) -> Result<CoefficientSet> {
    let (k, q) = (ep.k_tilde, ep.q_tilde);
    check_guard(k.norm())?;
    let (a, b, l) = (cfg.a, cfg.b, cfg.width());
    let e = |z: Complex64| z.exp();

    if q.norm() * l < DEGENERATE_QL {
        let kl = k * l;
        let den = 2.0 + kl;
        return Ok(CoefficientSet {
            family: Family::Tilde,
            t: 2.0 * e(kl) / den,
            r_r: e(2.0 * k * b) * kl / den,
            r_l: e(-2.0 * k * a) * kl / den,
            interior: None,
        });
    }

    let u = q / k;
    let (ep_, em) = (e(q * l), e(-q * l));
    let d = (1.0 + u) * (1.0 + u) * ep_ - (1.0 - u) * (1.0 - u) * em;
    let refl = (1.0 - u * u) * (ep_ - em) / d;

    Ok(CoefficientSet {
        family: Family::Tilde,
        t: e(k * l) * 4.0 * u / d,
        r_r: e(2.0 * k * b) * refl,
        r_l: e(-2.0 * k * a) * refl,
        interior: Some(InteriorAmplitudes {
            a_r: -2.0 * e(k * b) * e(q * a) * (1.0 - u) / d,
            b_r: 2.0 * e(k * b) * e(-q * a) * (1.0 + u) / d,
            a_l: 2.0 * e(-k * a) * e(q * b) * (1.0 + u) / d,
            b_l: -2.0 * e(-k * a) * e(-q * b) * (1.0 - u) / d,
        }),
    })
}

pub fn coefficients(cfg: &PhysicalConfig, ep: &EnergyPoint, family: Family) -> Result<CoefficientSet> {
    match family {
        Family::Plus => plus_coefficients(cfg, ep),
        Family::Star => star_coefficients(cfg, ep),
        Family::Tilde => tilde_coefficients(cfg, ep),
    }
}

/// Plus-family transmission amplitude as a function of a (possibly complex)
/// wavenumber.
pub fn transmission(cfg: &PhysicalConfig, k: Complex64) -> Result<Complex64> {
    let ep = EnergyPoint::from_wavenumber(cfg, k);
    Ok(plus_coefficients(cfg, &ep)?.t)
}
