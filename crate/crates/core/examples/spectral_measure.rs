//! Spectral measures from the jump of the resolvent across the real axis:
//! Lebesgue on the positive axis, nothing below zero.

use barrier_rhs::spectral_measure::{rho_interval, spectrum_verdict, Basis};
use barrier_rhs::PhysicalConfig;

fn main() -> barrier_rhs::Result<()> {
    let cfg = PhysicalConfig::default();
    for (e1, e2) in [(1.0, 2.0), (0.5, 4.0), (-5.0, -1.0)] {
        for basis in [Basis::Initial, Basis::Final] {
            let r = rho_interval(&cfg, e1, e2, basis)?;
            println!(
                "({e1}, {e2}) {basis:?}: rho = [[{:.9}, {:.1e}], [{:.1e}, {:.9}]]",
                r.rho[0][0], r.rho[0][1], r.rho[1][0], r.rho[1][1]
            );
        }
    }
    for v in spectrum_verdict(&cfg, &[-4.0, -0.1, 0.0, 0.1, 8.0]) {
        println!("E = {:5}: {:?}", v.e, v.class);
    }
    Ok(())
}
