mod common;

use std::f64::consts::PI;

use barrier_rhs::barrier::{PhysicalConfig, I};
use barrier_rhs::eigenfunctions::{
    k_normalized_chi, wronskian, Differentiable, Eigenfunction, EigenfunctionId, Family, Region, Side,
};
use barrier_rhs::Complex64;
use common::oracles::rk4_schrodinger;
use common::{c, rel_close};
use proptest::prelude::*;

const FAMILIES: [Family; 3] = [Family::Plus, Family::Minus, Family::Tilde];
const SIDES: [Side; 2] = [Side::Left, Side::Right];

fn build(cfg: &PhysicalConfig, family: Family, side: Side, e: Complex64) -> Eigenfunction {
    Eigenfunction::new(cfg, EigenfunctionId::at_energy(cfg, family, side, e)).unwrap()
}

fn energies(family: Family) -> Vec<Complex64> {
    (0..50)
        .map(|i| {
            let t = i as f64 / 49.0;
            match family {
                Family::Tilde => c(-0.2 - 30.0 * t, 0.7 * (t - 0.5)),
                _ => c(0.05 + 40.0 * t, if i % 3 == 0 { 0.0 } else { 0.4 * (t - 0.3) }),
            }
        })
        .collect()
}

#[test]
fn c1_matching_at_edges() {
    let cfg = PhysicalConfig::default();
    let mut worst: f64 = 0.0;
    for family in FAMILIES {
        for side in SIDES {
            for e in energies(family) {
                let f = build(&cfg, family, side, e);
                for (outer, x) in [(Region::Left, cfg.a), (Region::Right, cfg.b)] {
                    let (vo, d_o) = f.piece_eval(outer, x);
                    let (vm, dm) = f.piece_eval(Region::Middle, x);
                    let scale = vo.norm().max(vm.norm()).max(1e-300);
                    let dscale = d_o.norm().max(dm.norm()).max(1e-300);
                    worst = worst.max((vo - vm).norm() / scale);
                    worst = worst.max((d_o - dm).norm() / dscale);
                }
            }
        }
    }
    assert!(worst <= 1e-11, "matching defect {worst:e}");
}

#[test]
fn schrodinger_residual_by_finite_differences() {
    let cfg = PhysicalConfig::default();
    let h = 1e-4;
    let xs: Vec<f64> = (0..41).map(|i| -2.0 + 5.0 * i as f64 / 40.0).collect();
    for family in FAMILIES {
        for side in SIDES {
            for e in [c(-3.0, 0.0), c(2.0, 0.0), c(14.0, 0.5)] {
                if (family == Family::Tilde) != (e.re < 0.0) {
                    continue;
                }
                let f = build(&cfg, family, side, e);
                let max = xs.iter().map(|&x| f.eval(x).norm()).fold(0.0, f64::max);
                for &x in &xs {
                    if (x - cfg.a).abs() < 1e-3 || (x - cfg.b).abs() < 1e-3 {
                        continue;
                    }
                    let d2 = (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h);
                    let res = -d2 / cfg.energy_scale() + cfg.potential(x) * f.eval(x) - e * f.eval(x);
                    assert!(res.norm() <= 1e-6 * e.norm() * max, "{family:?} {side:?} E={e} x={x}");
                }
            }
        }
    }
}

#[test]
fn matches_direct_integration() {
    let cfg = PhysicalConfig::default();
    let e = 5.0;
    let f = build(&cfg, Family::Plus, Side::Left, c(e, 0.0));
    let k = (2.0 * e).sqrt();
    let pre = (1.0 / (2.0 * PI * k)).sqrt();
    let t = f.coefficients.t;
    let want = pre * t * (I * k * 2.0).exp();
    assert!(rel_close(f.eval(2.0), want, 1e-13));

    // Outgoing data at x = 2, integrated back to x = -1.
    let init = (want, I * k * want);
    // Piecewise, so no step straddles a jump of the potential.
    let y = rk4_schrodinger(e, |_| 0.0, 2.0, 2.0, cfg.b, init, 10000);
    let y = rk4_schrodinger(e, |_| cfg.v0, 2.0, cfg.b, cfg.a, y, 10000);
    let (v, d) = rk4_schrodinger(e, |_| 0.0, 2.0, cfg.a, -1.0, y, 10000);
    let (fv, fd) = f.value_and_derivative(-1.0);
    assert!(rel_close(fv, v, 1e-8), "{fv} vs {v}");
    assert!(rel_close(fd, d, 1e-8));
}

#[test]
fn wronskians_match_transmission() {
    let cfg = PhysicalConfig::new(1.3, 0.8, 6.0, -0.2, 0.9).unwrap();
    let xs = [-1.0, 0.1, 0.5, 0.85, 3.0];
    let scale = cfg.m / (PI * cfg.hbar * cfg.hbar);
    let cases = [
        (Family::Tilde, c(-2.0, 0.0), c(-scale, 0.0)),
        (Family::Tilde, c(-1.0, 0.6), c(-scale, 0.0)),
        (Family::Plus, c(3.0, 1.0), I * scale),
        (Family::Minus, c(3.0, -1.0), -I * scale),
    ];
    for (family, e, factor) in cases {
        let r = build(&cfg, family, Side::Right, e);
        let l = build(&cfg, family, Side::Left, e);
        let want = factor * r.coefficients.t;
        let ws: Vec<Complex64> = xs.iter().map(|&x| wronskian(&r, &l, x)).collect();
        for w in &ws {
            assert!(rel_close(*w, want, 1e-10), "{family:?} E={e}: {w} vs {want}");
            assert!((w - ws[0]).norm() <= 1e-10 * want.norm().max(1.0));
        }
    }
}

#[test]
fn conjugation_swaps_families() {
    let cfg = PhysicalConfig::default();
    for e in [c(3.0, 0.2), c(12.0, -0.7), c(0.4, 1.5)] {
        for side in SIDES {
            let plus = build(&cfg, Family::Plus, side, e.conj());
            let minus = build(&cfg, Family::Minus, side, e);
            for x in [-1.0, 0.5, 2.0] {
                assert!(rel_close(plus.eval(x).conj(), minus.eval(x), 1e-12), "E={e} x={x}");
            }
        }
    }
}

#[test]
fn left_and_right_are_independent_on_real_axis() {
    let cfg = PhysicalConfig::default();
    for e in [0.3, 5.0, 10.0, 25.0] {
        let l = build(&cfg, Family::Plus, Side::Left, c(e, 0.0));
        let r = build(&cfg, Family::Plus, Side::Right, c(e, 0.0));
        assert!(wronskian(&r, &l, 0.3).norm() > 1e-10);
    }
}

#[test]
fn tilde_decays_and_matches_at_edge() {
    let cfg = PhysicalConfig::default();
    let f = build(&cfg, Family::Tilde, Side::Right, c(-1.0, 0.0));
    assert!(f.eval(-30.0).norm() < 1e-15);
    let (outer, _) = f.piece_eval(Region::Left, cfg.a);
    let (mid, _) = f.piece_eval(Region::Middle, cfg.a);
    assert!(rel_close(outer, mid, 1e-12));

    let free = PhysicalConfig::default().with_v0(0.0);
    let f = build(&free, Family::Tilde, Side::Right, c(-1.0, 0.0));
    let kt = 2f64.sqrt();
    let pre = (1.0 / (2.0 * PI * kt)).sqrt();
    for x in [-2.0, 0.5, 3.0] {
        assert!(rel_close(f.eval(x), c(pre * (kt * x).exp(), 0.0), 1e-13));
    }
}

#[test]
fn k_normalisation() {
    let free = PhysicalConfig::default().with_v0(0.0);
    let k = 1.7;
    let id = EigenfunctionId::at_wavenumber(&free, Family::Plus, Side::Left, c(k, 0.0));
    for x in [-1.0, 0.0, 2.5] {
        let want = Complex64::from_polar((2.0 * PI).powf(-0.5), k * x);
        assert!(rel_close(k_normalized_chi(&free, id, x).unwrap(), want, 1e-14));
    }

    let cfg = PhysicalConfig::default();
    let id = EigenfunctionId::at_wavenumber(&cfg, Family::Plus, Side::Right, c(2.0, 0.0));
    let f = Eigenfunction::new(&cfg, id).unwrap();
    let co = f.coefficients;
    let bound = (2.0 * PI).powf(-0.5) * (1.0 + co.t.norm() + co.r_r.norm());
    for i in 0..200 {
        let x = -4.0 + 9.0 * i as f64 / 199.0;
        let v = k_normalized_chi(&cfg, id, x).unwrap();
        let ratio = v / f.eval(x);
        assert!(rel_close(ratio, c(2f64.sqrt(), 0.0), 1e-13));
        if x < cfg.a || x > cfg.b {
            assert!(v.norm() <= bound);
        }
    }
}

proptest! {
    #[test]
    fn wronskian_is_constant(
        e_re in 0.2f64..30.0,
        e_im in 0.05f64..2.0,
        x1 in -3.0f64..4.0,
        x2 in -3.0f64..4.0,
    ) {
        let cfg = PhysicalConfig::default();
        let e = c(e_re, e_im);
        let r = build(&cfg, Family::Plus, Side::Right, e);
        let l = build(&cfg, Family::Plus, Side::Left, e);
        let w1 = wronskian(&r, &l, x1);
        let w2 = wronskian(&r, &l, x2);
        prop_assert!((w1 - w2).norm() <= 1e-9 * w1.norm().max(1.0));
    }
}
