//! Transmission and reflection of the default barrier across energies,
//! including the first over-barrier resonance.

use barrier_rhs::coefficients::plus_coefficients;
use barrier_rhs::{EnergyPoint, PhysicalConfig};

fn main() -> barrier_rhs::Result<()> {
    let cfg = PhysicalConfig::default();
    println!("{:>8} {:>14} {:>14} {:>10}", "E", "|T|^2", "|R|^2", "defect");
    for e in [0.5, 2.0, 5.0, 9.0, 12.0, 14.93, 20.0, 40.0] {
        let c = plus_coefficients(&cfg, &EnergyPoint::real(&cfg, e))?;
        let (dl, _) = c.unitarity_defects();
        println!("{e:8.2} {:14.6e} {:14.6e} {dl:10.1e}", c.t.norm_sqr(), c.r_l.norm_sqr());
    }
    Ok(())
}
