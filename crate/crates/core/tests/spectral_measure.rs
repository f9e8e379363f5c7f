mod common;

use barrier_rhs::barrier::PhysicalConfig;
use barrier_rhs::coefficients::{plus_coefficients, star_coefficients};
use barrier_rhs::spectral_measure::{jump_density, rho_interval, Basis};
use barrier_rhs::EnergyPoint;

#[test]
fn lebesgue_measure_on_positive_intervals() {
    let cfg = PhysicalConfig::default();
    for (e1, e2) in [(1.0, 2.0), (0.5, 4.0)] {
        let init = rho_interval(&cfg, e1, e2, Basis::Initial).unwrap();
        let fin = rho_interval(&cfg, e1, e2, Basis::Final).unwrap();
        for rho in [&init, &fin] {
            let len = e2 - e1;
            assert!(rho.rho[0][1].abs() <= 1e-6 && rho.rho[1][0].abs() <= 1e-6);
            assert!((rho.rho[0][0] - len).abs() <= 1e-6 * len);
            assert!((rho.rho[1][1] - len).abs() <= 1e-6 * len);
            assert!(rho.min_eigenvalue() >= -1e-9);
        }
        for i in 0..2 {
            for j in 0..2 {
                assert!((init.rho[i][j] - fin.rho[i][j]).abs() <= 1e-6);
            }
        }
    }
}

#[test]
fn no_mass_below_threshold() {
    let cfg = PhysicalConfig::default();
    for basis in [Basis::Initial, Basis::Final] {
        let rho = rho_interval(&cfg, -5.0, -1.0, basis).unwrap();
        assert!(rho.rho.iter().flatten().all(|v| v.abs() <= 1e-8), "{rho:?}");
    }
}

#[test]
fn off_diagonal_density_vanishes_pointwise() {
    let cfg = PhysicalConfig::default();
    let ep = EnergyPoint::real(&cfg, 1.7);
    let p = plus_coefficients(&cfg, &ep).unwrap();
    let s = star_coefficients(&cfg, &ep).unwrap();
    assert!((p.r_r / p.t + s.r_l / s.t).norm() <= 1e-8);
    let m = jump_density(&cfg, 1.7, 1e-9, Basis::Initial).unwrap();
    assert!(m[0][1].norm() <= 1e-7 && m[1][0].norm() <= 1e-8);
}
