//! Gauss–Legendre node generation, composite rules over breakpoints, and an
//! adaptive Gauss–Kronrod (7/15) integrator for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

/// The 16-point rule used by every composite integration in the crate.
pub fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Nodes and weights of a composite 16-point rule on `[lo, hi]` whose
/// panels are no longer than `max_panel` and never straddle a point of
/// `breaks` lying strictly inside the interval.
pub fn composite_rule(lo: f64, hi: f64, breaks: &[f64], max_panel: f64) -> (Vec<f64>, Vec<f64>) {
    let mut cuts: Vec<f64> = vec![lo];
    cuts.extend(breaks.iter().copied().filter(|&c| c > lo && c < hi));
    cuts.push(hi);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();

    let (gx, gw) = gl16();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for pair in cuts.windows(2) {
        let (s, e) = (pair[0], pair[1]);
        let panels = (((e - s) / max_panel).ceil() as usize).max(1);
        let h = (e - s) / panels as f64;
        for p in 0..panels {
            let mid = s + (p as f64 + 0.5) * h;
            for (x, w) in gx.iter().zip(gw) {
                nodes.push(mid + 0.5 * h * x);
                weights.push(0.5 * h * w);
            }
        }
    }
    (nodes, weights)
}

/// Composite 16-point integral with a fixed number of equal panels.
pub fn composite_gl<F>(f: F, lo: f64, hi: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (gx, gw) = gl16();
    let h = (hi - lo) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        let mut panel = Complex64::new(0.0, 0.0);
        for (x, w) in gx.iter().zip(gw) {
            panel += f(mid + 0.5 * h * x) * *w;
        }
        acc += panel * (0.5 * h);
    }
    acc
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F>(f: &F, lo: f64, hi: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let k = kron * h;
    let g = gauss * h;
    (k, (k - g).norm())
}

struct Segment {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Tolerances and work limit for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_segments: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
            max_segments: 4000,
        }
    }
}

/// Globally adaptive G7K15 integration of `f` over `[lo, hi]`, splitting
/// first at every interior point of `breaks` (integrand kinks).
pub fn integrate_adaptive<F>(f: F, lo: f64, hi: f64, breaks: &[f64], opts: AdaptiveOptions) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if hi == lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut cuts: Vec<f64> = vec![lo];
    cuts.extend(breaks.iter().copied().filter(|&c| c > lo && c < hi));
    cuts.push(hi);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for pair in cuts.windows(2) {
        let (value, error) = gk15(&f, pair[0], pair[1]);
        total += value;
        total_err += error;
        heap.push(Segment {
            lo: pair[0],
            hi: pair[1],
            value,
            error,
        });
    }

    loop {
        if total_err <= opts.abs_tol.max(opts.rel_tol * total.norm()) {
            // Running sums drift when large early errors are subtracted out;
            // confirm against an exact re-summation before accepting.
            total = heap.iter().map(|s: &Segment| s.value).sum();
            total_err = heap.iter().map(|s| s.error).sum();
            if total_err <= opts.abs_tol.max(opts.rel_tol * total.norm()) {
                break;
            }
        }
        if heap.len() >= opts.max_segments {
            return Err(Error::QuadratureFailure {
                lo,
                hi,
                error: total_err,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Interval collapsed to adjacent floats; nothing more to gain.
            return Err(Error::QuadratureFailure {
                lo,
                hi,
                error: total_err,
                intervals: heap.len() + 1,
            });
        }
        let (v1, e1) = gk15(&f, worst.lo, mid);
        let (v2, e2) = gk15(&f, mid, worst.hi);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
        });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 33] {
            let (x, w) = gauss_legendre(n);
            let wsum: f64 = w.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-14, "n={n}");
            // degree 2n-1 monomial with even power
            let deg = 2 * n - 2;
            let exact = 2.0 / (deg as f64 + 1.0);
            let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((approx - exact).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn composite_rule_respects_breaks() {
        let (x, w) = composite_rule(-1.0, 2.0, &[0.3], 0.5);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        let total: f64 = w.iter().sum();
        assert!((total - 3.0).abs() < 1e-14);
        let abs_int: f64 = x.iter().zip(&w).map(|(x, w)| w * (x - 0.3).abs()).sum();
        let exact = 0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7;
        assert!((abs_int - exact).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_oscillation_and_kinks() {
        let f = |x: f64| Complex64::new(0.0, 20.0 * x).exp();
        let v = integrate_adaptive(f, 0.0, 3.0, &[], AdaptiveOptions::default()).unwrap();
        let exact = (Complex64::new(0.0, 60.0).exp() - 1.0) / Complex64::new(0.0, 20.0);
        assert!((v - exact).norm() < 1e-10);

        let g = |x: f64| Complex64::new((x - 0.7).abs(), 0.0);
        let v = integrate_adaptive(g, 0.0, 1.0, &[0.7], AdaptiveOptions::default()).unwrap();
        assert!((v.re - (0.245 + 0.045)).abs() < 1e-13);
    }

    #[test]
    fn adaptive_reports_failure() {
        let f = |x: f64| Complex64::new(1.0 / x.abs().sqrt().max(1e-300), 0.0);
        let opts = AdaptiveOptions {
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            max_segments: 20,
        };
        assert!(matches!(
            integrate_adaptive(f, -1.0, 1.0, &[], opts),
            Err(Error::QuadratureFailure { .. })
        ));
    }
}
