mod common;

use barrier_rhs::barrier::{energy_point, EnergyPoint, PhysicalConfig};
use barrier_rhs::coefficients::{plus_coefficients, star_coefficients, tilde_coefficients};
use common::oracles::{barrier_transmission_above, barrier_transmission_below, transfer_matrix};
use common::{c, k_grid, rel_close};
use proptest::prelude::*;

#[test]
fn unitarity_on_real_axis() {
    let cfg = PhysicalConfig::default();
    for k in k_grid() {
        let co = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, c(k, 0.0))).unwrap();
        let (dl, dr) = co.unitarity_defects();
        assert!(dl.abs() <= 1e-12 && dr.abs() <= 1e-12, "k={k}: {dl:e} {dr:e}");
    }
}

#[test]
fn reflection_interrelation_and_reversal() {
    let cfg = PhysicalConfig::new(1.0, 1.0, 4.0, -0.3, 1.2).unwrap();
    for k in k_grid() {
        let ep = EnergyPoint::from_wavenumber(&cfg, c(k, 0.0));
        let p = plus_coefficients(&cfg, &ep).unwrap();
        let s = star_coefficients(&cfg, &ep).unwrap();
        assert!((p.r_r * s.t + p.t * s.r_l).norm() <= 1e-12, "k={k}");
        let reversed = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, c(-k, 0.0))).unwrap();
        assert!((reversed.t - s.t).norm() <= 1e-12, "k={k}");
    }
}

#[test]
fn plus_family_matches_transfer_matrix() {
    for cfg in [
        PhysicalConfig::default(),
        PhysicalConfig::new(0.5, 1.3, 3.0, -1.0, 0.7).unwrap(),
    ] {
        let s = cfg.energy_scale();
        for k in k_grid() {
            let kk = c(k, 0.0);
            let co = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, kk)).unwrap();
            let o = transfer_matrix(kk, cfg.v0, cfg.a, cfg.b, s);
            assert!(rel_close(co.t, o.t, 1e-10), "T k={k}");
            assert!(rel_close(co.r_l, o.r_l, 1e-10), "Rl k={k}");
            assert!(rel_close(co.r_r, o.r_r, 1e-10), "Rr k={k}");
            if let Some(mid) = co.interior {
                // Interior amplitudes are quoted for the branch q of the library;
                // the oracle uses the principal root, which may differ in sign.
                let ep = EnergyPoint::from_wavenumber(&cfg, kk);
                let q_oracle = (kk * kk - s * cfg.v0).sqrt();
                let (al, bl, ar, br) = if (q_oracle - ep.q).norm() < 1e-9 * (1.0 + ep.q.norm()) {
                    (mid.a_l, mid.b_l, mid.a_r, mid.b_r)
                } else {
                    (mid.b_l, mid.a_l, mid.b_r, mid.a_r)
                };
                assert!(rel_close(al, o.interior_left.0, 1e-10), "Al k={k}");
                assert!(rel_close(bl, o.interior_left.1, 1e-10), "Bl k={k}");
                assert!(rel_close(ar, o.interior_right.0, 1e-10), "Ar k={k}");
                assert!(rel_close(br, o.interior_right.1, 1e-10), "Br k={k}");
            }
        }
    }
}

#[test]
fn closed_form_transmission_and_resonance() {
    let cfg = PhysicalConfig::default();
    let t5 = plus_coefficients(&cfg, &EnergyPoint::real(&cfg, 5.0))
        .unwrap()
        .t
        .norm_sqr();
    assert!((t5 - barrier_transmission_below(5.0, 10.0, 1.0)).abs() < 1e-10);

    for e in [0.5, 2.0, 7.5, 9.9] {
        let t2 = plus_coefficients(&cfg, &EnergyPoint::real(&cfg, e))
            .unwrap()
            .t
            .norm_sqr();
        assert!((t2 - barrier_transmission_below(e, 10.0, 1.0)).abs() < 1e-10, "E={e}");
    }
    for e in [10.5, 13.0, 40.0] {
        let t2 = plus_coefficients(&cfg, &EnergyPoint::real(&cfg, e))
            .unwrap()
            .t
            .norm_sqr();
        assert!((t2 - barrier_transmission_above(e, 10.0, 1.0)).abs() < 1e-10, "E={e}");
    }

    let e_res = 10.0 + std::f64::consts::PI.powi(2) / 2.0;
    let t2 = plus_coefficients(&cfg, &EnergyPoint::real(&cfg, e_res))
        .unwrap()
        .t
        .norm_sqr();
    assert!((t2 - 1.0).abs() < 1e-10);
}

#[test]
fn tilde_family_cross_checks() {
    let cfg = PhysicalConfig::default();
    let ep = energy_point(&cfg, c(-1.0, 0.0));
    assert!((ep.k_tilde - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
    let t = tilde_coefficients(&cfg, &ep).unwrap();
    let k = c(0.0, 2f64.sqrt());
    let p = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, k)).unwrap();
    assert!(rel_close(t.t, p.t, 1e-12));

    // No zero of the tilde transmission on the negative axis.
    for i in 0..2000 {
        let e = -50.0 + 50.0 * (i as f64 + 0.5) / 2000.0;
        let tt = tilde_coefficients(&cfg, &energy_point(&cfg, c(e, 0.0))).unwrap().t;
        assert!(tt.norm() > 0.0 && tt.is_finite(), "E={e}");
        assert!(tt.im.abs() < 1e-12 * tt.norm());
    }
}

#[test]
fn star_matches_plus_at_negated_complex_wavenumber() {
    let cfg = PhysicalConfig::default();
    let k = c(1.0, 0.5);
    let s = star_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, k)).unwrap();
    let p = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, k)).unwrap();
    let pm = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, -k)).unwrap();
    assert!((s.t - p.t.conj()).norm() > 1e-3);
    assert!(rel_close(s.t, pm.t, 1e-12));
    assert!(rel_close(s.r_l, pm.r_l, 1e-12));
}

proptest! {
    #[test]
    fn unitarity_holds_for_random_barriers(
        v0 in 0.0f64..30.0,
        a in -2.0f64..1.0,
        width in 0.1f64..3.0,
        k in 0.05f64..15.0,
    ) {
        let cfg = PhysicalConfig::new(1.0, 1.0, v0, a, a + width).unwrap();
        let co = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, c(k, 0.0))).unwrap();
        let (dl, dr) = co.unitarity_defects();
        prop_assert!(dl.abs() < 1e-10 && dr.abs() < 1e-10);
        prop_assert!((co.r_l.norm() - co.r_r.norm()).abs() < 1e-10);
    }

    #[test]
    fn transfer_matrix_agrees_at_complex_wavenumber(
        kr in 0.2f64..8.0,
        ki in -1.0f64..1.0,
        v0 in 0.5f64..20.0,
    ) {
        let cfg = PhysicalConfig::new(1.0, 1.0, v0, 0.0, 1.0).unwrap();
        let k = c(kr, ki);
        let co = plus_coefficients(&cfg, &EnergyPoint::from_wavenumber(&cfg, k)).unwrap();
        let o = transfer_matrix(k, v0, 0.0, 1.0, 2.0);
        prop_assert!(rel_close(co.t, o.t, 1e-9));
        prop_assert!(rel_close(co.r_r, o.r_r, 1e-9));
        prop_assert!(rel_close(co.r_l, o.r_l, 1e-9));
    }
}
