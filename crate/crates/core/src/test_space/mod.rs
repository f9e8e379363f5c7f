//! Test functions that are smooth on the line and flat at both barrier
//! edges, together with exact (Taylor-jet) application of `P`, `Q`, `H`.
//!
//! A test function is
//! `amp * exp(i p0 x / hbar - (x - c)^2 / 2w^2 - sigma^2/(x-a)^2 - sigma^2/(x-b)^2)`,
//! defined as zero at `x = a` and `x = b`. Every derivative vanishes there.

pub mod jet;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barrier::{PhysicalConfig, I};
use crate::eigenfunctions::{Eigenfunction, EigenfunctionId, Family, Side};
use crate::error::{Error, Result};
use crate::quadrature::composite_rule;
use crate::sampled::{Axis, QuadratureSpec, SampledFunction};

pub use jet::Jet;

/// Below this the exponent is treated as an exact zero.
const UNDERFLOW_EXPONENT: f64 = -600.0;
/// Half-width of the numerical support in units of the Gaussian width.
const SUPPORT_WIDTHS: f64 = 9.0;
const EDGE_GRADING: i32 = 8;
/// Extra spectral reach, in units of `1/w`, beyond the carrier wavenumber.
const SPECTRAL_WIDTHS: f64 = 8.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Observable {
    P,
    Q,
    H,
}

impl Observable {
    fn order(self) -> usize {
        match self {
            Observable::P => 1,
            Observable::Q => 0,
            Observable::H => 2,
        }
    }
}

/// A function whose Taylor jets are available exactly at any point.
pub trait Smooth: Sync {
    fn jet(&self, x: f64, order: usize) -> Jet;

    /// Interval outside which the function is numerically zero.
    fn support(&self) -> (f64, f64);

    /// Largest panel width that still resolves the function.
    fn resolution(&self) -> f64;

    fn value(&self, x: f64) -> Complex64 {
        self.jet(x, 0).value()
    }

    fn value_and_derivative(&self, x: f64) -> (Complex64, Complex64) {
        let j = self.jet(x, 1);
        (j.c[0], j.c[1])
    }
}

impl<S: Smooth + ?Sized> Smooth for &S {
    fn jet(&self, x: f64, order: usize) -> Jet {
        (**self).jet(x, order)
    }
    fn support(&self) -> (f64, f64) {
        (**self).support()
    }
    fn resolution(&self) -> f64 {
        (**self).resolution()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
    pub sigma: f64,
    pub amplitude: Complex64,
    a: f64,
    b: f64,
    hbar: f64,
}

pub fn make_test_function(
    cfg: &PhysicalConfig,
    center: f64,
    width: f64,
    momentum: f64,
    sigma: f64,
) -> Result<TestFunction> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::InvalidArgument(format!("width must be positive, got {width}")));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    if !(center.is_finite() && momentum.is_finite()) {
        return Err(Error::InvalidArgument("center and momentum must be finite".into()));
    }
    Ok(TestFunction {
        center,
        width,
        momentum,
        sigma,
        amplitude: Complex64::new(1.0, 0.0),
        a: cfg.a,
        b: cfg.b,
        hbar: cfg.hbar,
    })
}

/// Default flattening scale, a tenth of the barrier width.
pub fn default_sigma(cfg: &PhysicalConfig) -> f64 {
    0.1 * cfg.width()
}

impl TestFunction {
    pub fn scaled(mut self, s: Complex64) -> Self {
        self.amplitude *= s;
        self
    }

    /// Wavenumber beyond which the spectrum is negligible.
    pub fn spectral_reach(&self) -> f64 {
        self.momentum.abs() / self.hbar + SPECTRAL_WIDTHS / self.width
    }

    fn touches_edges(&self) -> bool {
        let (lo, hi) = self.support();
        (lo..=hi).contains(&self.a) || (lo..=hi).contains(&self.b)
    }

    /// Transform grid recipe: support padded by 25% and spectral reach.
    pub fn quadrature_spec(&self, cfg: &PhysicalConfig) -> Result<QuadratureSpec> {
        let (lo, hi) = self.support();
        let pad = 0.125 * (hi - lo);
        QuadratureSpec::new(cfg, (lo - pad, hi + pad), self.spectral_reach(), self.resolution())
    }

    /// Exponent jet `g` with `phi = amp * exp(g)`.
    fn exponent(&self, x0: f64, order: usize) -> Jet {
        let mut g = Jet::zero(x0, order);
        let d = x0 - self.center;
        let w2 = self.width * self.width;
        g.c[0] = Complex64::new(-d * d / (2.0 * w2), self.momentum * x0 / self.hbar);
        if order >= 1 {
            g.c[1] = Complex64::new(-d / w2, self.momentum / self.hbar);
        }
        if order >= 2 {
            g.c[2] = Complex64::new(-1.0 / (2.0 * w2), 0.0);
        }
        let s2 = self.sigma * self.sigma;
        for edge in [self.a, self.b] {
            // -s2/(d + t)^2 = -s2 sum_n (-1)^n (n+1) t^n / d^(n+2)
            let d = x0 - edge;
            let inv = 1.0 / d;
            let mut pow = inv * inv;
            for n in 0..=order {
                let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
                g.c[n] += sign * s2 * (n as f64 + 1.0) * pow;
                pow *= inv;
            }
        }
        g
    }
}

impl Smooth for TestFunction {
    fn jet(&self, x: f64, order: usize) -> Jet {
        if x == self.a || x == self.b {
            return Jet::zero(x, order);
        }
        let g = self.exponent(x, order);
        if g.c[0].re < UNDERFLOW_EXPONENT {
            return Jet::zero(x, order);
        }
        g.exp().scale(self.amplitude)
    }

    fn support(&self) -> (f64, f64) {
        (
            self.center - SUPPORT_WIDTHS * self.width,
            self.center + SUPPORT_WIDTHS * self.width,
        )
    }

    fn resolution(&self) -> f64 {
        let base = (0.5 * self.width).min(10.0 / self.spectral_reach());
        if self.touches_edges() {
            base.min(self.sigma)
        } else {
            base
        }
    }

    fn value(&self, x: f64) -> Complex64 {
        if x == self.a || x == self.b {
            return Complex64::default();
        }
        let g = self.exponent(x, 0).c[0];
        if g.re < UNDERFLOW_EXPONENT {
            Complex64::default()
        } else {
            self.amplitude * g.exp()
        }
    }
}

/// A word in `P`, `Q`, `H` applied to a smooth function; `word[0]` acts
/// first.
#[derive(Debug, Clone)]
pub struct OperatorImage<S> {
    pub base: S,
    pub word: Vec<Observable>,
    cfg: PhysicalConfig,
}

pub fn apply_operator<S: Smooth>(cfg: &PhysicalConfig, phi: S, which: Observable) -> OperatorImage<S> {
    OperatorImage {
        base: phi,
        word: vec![which],
        cfg: *cfg,
    }
}

/// `word` applied to `phi`, `word[0]` first.
pub fn apply_word<S: Smooth>(cfg: &PhysicalConfig, phi: S, word: &[Observable]) -> OperatorImage<S> {
    OperatorImage {
        base: phi,
        word: word.to_vec(),
        cfg: *cfg,
    }
}

impl<S: Smooth> OperatorImage<S> {
    pub fn then(mut self, which: Observable) -> Self {
        self.word.push(which);
        self
    }
}

fn act(cfg: &PhysicalConfig, op: Observable, j: Jet) -> Jet {
    match op {
        Observable::Q => j.times_x(),
        Observable::P => j.differentiate().scale(-I * cfg.hbar),
        Observable::H => {
            let v = cfg.potential(j.x0);
            let kin = -cfg.hbar * cfg.hbar / (2.0 * cfg.m);
            let d2 = j.differentiate().differentiate();
            let c = d2.c.iter().zip(&j.c).map(|(d, f)| d * kin + f * v).collect();
            Jet { x0: j.x0, c }
        }
    }
}

impl<S: Smooth> Smooth for OperatorImage<S> {
    fn jet(&self, x: f64, order: usize) -> Jet {
        let extra: usize = self.word.iter().map(|o| o.order()).sum();
        let mut j = self.base.jet(x, order + extra);
        for &op in &self.word {
            j = act(&self.cfg, op, j);
        }
        j.c.truncate(order + 1);
        j
    }

    fn support(&self) -> (f64, f64) {
        self.base.support()
    }

    fn resolution(&self) -> f64 {
        // Each power of x or derivative adds structure; halve per letter.
        self.base.resolution() / (1.0 + 0.5 * self.word.len() as f64)
    }
}

/// Pointwise sum of two smooth functions.
#[derive(Debug, Clone)]
pub struct SmoothSum<A, B>(pub A, pub B);

impl<A: Smooth, B: Smooth> Smooth for SmoothSum<A, B> {
    fn jet(&self, x: f64, order: usize) -> Jet {
        let (p, q) = (self.0.jet(x, order), self.1.jet(x, order));
        Jet {
            x0: x,
            c: p.c.iter().zip(&q.c).map(|(a, b)| a + b).collect(),
        }
    }

    fn support(&self) -> (f64, f64) {
        let (a, b) = (self.0.support(), self.1.support());
        (a.0.min(b.0), a.1.max(b.1))
    }

    fn resolution(&self) -> f64 {
        self.0.resolution().min(self.1.resolution())
    }
}

/// Position rule resolving `phi` over its support, split at the edges.
pub fn position_rule(cfg: &PhysicalConfig, phi: &impl Smooth) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = phi.support();
    let h = phi.resolution();
    // Flattened functions have their sharpest features just outside each
    // edge, so panels shrink geometrically towards a and b.
    let mut breaks = vec![cfg.a, cfg.b];
    for edge in [cfg.a, cfg.b] {
        for j in 0..EDGE_GRADING {
            let d = 4.0 * h * 0.5f64.powi(j);
            breaks.extend([edge - d, edge + d]);
        }
    }
    composite_rule(lo, hi, &breaks, h)
}

/// `phi` sampled on an explicit rule.
pub fn sample(phi: &impl Smooth, rule: &(Vec<f64>, Vec<f64>), window: (f64, f64)) -> Result<SampledFunction> {
    SampledFunction::from_fn(Axis::Position, rule, window, |x| phi.value(x))
}

/// `(phi, psi)` in position space, antilinear in `phi`.
pub fn inner_product(cfg: &PhysicalConfig, phi: &impl Smooth, psi: &impl Smooth) -> Complex64 {
    let sum = SmoothSum(phi, psi);
    let (x, w) = position_rule(cfg, &sum);
    x.iter()
        .zip(&w)
        .map(|(&x, &w)| phi.value(x).conj() * psi.value(x) * w)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormIndex {
    n: u8,
    m: u8,
    l: u8,
}

impl NormIndex {
    pub const MAX: u8 = 2;

    pub fn new(n: u8, m: u8, l: u8) -> Result<Self> {
        if n > Self::MAX || m > Self::MAX || l > Self::MAX {
            return Err(Error::InvalidArgument(format!(
                "norm indices ({n},{m},{l}) exceed {}",
                Self::MAX
            )));
        }
        Ok(Self { n, m, l })
    }

    pub fn n(&self) -> u8 {
        self.n
    }
    pub fn m(&self) -> u8 {
        self.m
    }
    pub fn l(&self) -> u8 {
        self.l
    }

    /// `H^l` first, then `Q^m`, then `P^n`.
    pub fn word(&self) -> Vec<Observable> {
        let mut w = vec![Observable::H; self.l as usize];
        w.extend(std::iter::repeat_n(Observable::Q, self.m as usize));
        w.extend(std::iter::repeat_n(Observable::P, self.n as usize));
        w
    }
}

/// `|| P^n Q^m H^l phi ||`.
pub fn norm_nml(cfg: &PhysicalConfig, phi: &impl Smooth, idx: NormIndex) -> f64 {
    let image = apply_word(cfg, phi, &idx.word());
    let (x, w) = position_rule(cfg, &image);
    x.iter()
        .zip(&w)
        .map(|(&x, &w)| w * image.value(x).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Commutator {
    /// `[Q, P] = i hbar`
    QP,
    /// `[H, Q] = -i hbar P / m`
    HQ,
    /// `[H, P] = 0`
    HP,
    /// `[H^n, Q] = -n i hbar P H^(n-1) / m`
    HnQ(u8),
    /// `[Q^n, P] = n i hbar Q^(n-1)`
    QnP(u8),
    /// `[H^n, P] = 0`
    HnP(u8),
}

/// Sample points used by commutator and flatness checks: a uniform sweep of
/// the support plus points crowding both edges.
fn probe_points(cfg: &PhysicalConfig, phi: &impl Smooth) -> Vec<f64> {
    let (lo, hi) = phi.support();
    let mut xs: Vec<f64> = (0..=400).map(|i| lo + (hi - lo) * i as f64 / 400.0).collect();
    for edge in [cfg.a, cfg.b] {
        for d in [1e-3, 1e-2, 0.03, 0.1] {
            xs.push(edge - d);
            xs.push(edge + d);
        }
        xs.push(edge);
    }
    xs
}

/// Relative max-norm residual `max |lhs - rhs| / max(|terms|)` of the
/// commutator identity on `phi`.
pub fn commutator_check(cfg: &PhysicalConfig, phi: &impl Smooth, pair: Commutator) -> Result<f64> {
    use Observable::*;
    let (hbar, m) = (cfg.hbar, cfg.m);
    let (a_word, b_word, n) = match pair {
        Commutator::QP => (vec![Q], vec![P], 1u8),
        Commutator::HQ => (vec![H], vec![Q], 1),
        Commutator::HP => (vec![H], vec![P], 1),
        Commutator::HnQ(n) => (vec![H; n as usize], vec![Q], n),
        Commutator::QnP(n) => (vec![Q; n as usize], vec![P], n),
        Commutator::HnP(n) => (vec![H; n as usize], vec![P], n),
    };
    if n == 0 || n > 2 {
        return Err(Error::InvalidArgument(format!(
            "commutator power must be 1 or 2, got {n}"
        )));
    }
    // [A, B] phi = A(B phi) - B(A phi): word order is "first applied first".
    let ab = apply_word(cfg, phi, &[b_word.clone(), a_word.clone()].concat());
    let ba = apply_word(cfg, phi, &[a_word.clone(), b_word.clone()].concat());
    let nf = n as f64;
    let rhs: Box<dyn Fn(f64) -> Complex64 + '_> = match pair {
        Commutator::QP => Box::new(|x| I * hbar * phi.value(x)),
        Commutator::HQ | Commutator::HnQ(_) => {
            let mut w = vec![H; n as usize - 1];
            w.push(P);
            let img = apply_word(cfg, phi, &w);
            Box::new(move |x| -I * hbar * nf / m * img.value(x))
        }
        Commutator::QnP(_) => {
            let img = apply_word(cfg, phi, &vec![Q; n as usize - 1]);
            Box::new(move |x| I * hbar * nf * img.value(x))
        }
        Commutator::HP | Commutator::HnP(_) => Box::new(|_| Complex64::default()),
    };
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for x in probe_points(cfg, phi) {
        let (u, v, r) = (ab.value(x), ba.value(x), rhs(x));
        worst = worst.max((u - v - r).norm());
        scale = scale.max(u.norm()).max(v.norm()).max(r.norm());
    }
    Ok(if scale == 0.0 { 0.0 } else { worst / scale })
}

/// Largest `|d^j f / dx^j|`, `j <= order`, over points approaching both
/// edges, relative to `max |f|`.
pub fn edge_flatness(cfg: &PhysicalConfig, f: &impl Smooth, order: usize) -> f64 {
    let peak = probe_points(cfg, f)
        .into_iter()
        .map(|x| f.value(x).norm())
        .fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for edge in [cfg.a, cfg.b] {
        for d in [0.0, 1e-3, -1e-3, 5e-3, -5e-3] {
            let j = f.jet(edge + d, order);
            for n in 0..=order {
                worst = worst.max(j.derivative(n).norm());
            }
        }
    }
    if peak == 0.0 {
        worst
    } else {
        worst / peak
    }
}

/// Continuity bound for the functional `phi -> <phi|E>`:
/// `|<phi|E>| <= sup|chi| sqrt(pi/2) (||phi|| + ||x^2 phi||)`.
/// Returns `(lhs, rhs)`.
pub fn functional_bound_check(
    cfg: &PhysicalConfig,
    phi: &impl Smooth,
    e: f64,
    family: Family,
    side: Side,
) -> Result<(f64, f64)> {
    if e.is_nan() || e <= 0.0 || family == Family::Tilde {
        return Err(Error::InvalidArgument(
            "bound needs a positive energy and the plus or minus family".into(),
        ));
    }
    let chi = Eigenfunction::new(
        cfg,
        EigenfunctionId::at_energy(cfg, family, side, Complex64::new(e, 0.0)),
    )?;
    let sup = chi.sup_bound().expect("real energy gives bounded eigenfunctions");
    let (x, w) = position_rule(cfg, phi);
    let lhs = x
        .iter()
        .zip(&w)
        .map(|(&x, &w)| phi.value(x) * chi.eval(x).conj() * w)
        .sum::<Complex64>()
        .norm();
    let norms = norm_nml(cfg, phi, NormIndex::new(0, 0, 0)?) + norm_nml(cfg, phi, NormIndex::new(0, 2, 0)?);
    Ok((lhs, sup * (PI / 2.0).sqrt() * norms))
}

/// Three reference functions: a wave arriving from the left, one arriving
/// from the right, and one sitting on the barrier.
pub fn standard_probes(cfg: &PhysicalConfig) -> Result<[TestFunction; 3]> {
    let sigma = default_sigma(cfg);
    let l = cfg.width();
    Ok([
        make_test_function(cfg, cfg.a - 7.5 * 0.7, 0.7, 1.5 * cfg.hbar, sigma)?,
        make_test_function(cfg, cfg.b + 7.5 * 0.6, 0.6, -cfg.hbar, sigma)?,
        make_test_function(cfg, 0.5 * (cfg.a + cfg.b), l / 14.0, 0.0, sigma)?,
    ])
}
