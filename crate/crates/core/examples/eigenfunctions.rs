//! A left-incident scattering state below the barrier top, and the
//! Wronskian that ties the two incidences to the transmission amplitude.

use std::f64::consts::PI;

use barrier_rhs::eigenfunctions::{wronskian, Eigenfunction, EigenfunctionId, Family, Side};
use barrier_rhs::{Complex64, PhysicalConfig};

fn main() -> barrier_rhs::Result<()> {
    let cfg = PhysicalConfig::default();
    let e = Complex64::new(4.0, 0.0);
    let left = Eigenfunction::new(&cfg, EigenfunctionId::at_energy(&cfg, Family::Plus, Side::Left, e))?;
    let right = Eigenfunction::new(&cfg, EigenfunctionId::at_energy(&cfg, Family::Plus, Side::Right, e))?;

    for i in 0..=16 {
        let x = -3.0 + 7.0 * i as f64 / 16.0;
        let v = left.eval(x);
        let bar = "#".repeat((40.0 * v.norm() / left.prefactor().norm() / 2.0) as usize);
        println!("{x:6.2} {:+.4} {:+.4}i {bar}", v.re, v.im);
    }

    let expected = Complex64::i() * cfg.m / (PI * cfg.hbar * cfg.hbar) * left.coefficients.t;
    for x in [-2.0, 0.5, 3.0] {
        println!(
            "W(x = {x}) = {:.6}  expected {:.6}",
            wronskian(&right, &left, x),
            expected
        );
    }
    Ok(())
}
