//! The resolvent kernel in each region of the cut energy plane, compared
//! with its single wavenumber formula.

use barrier_rhs::barrier::physical_wavenumber;
use barrier_rhs::greens::{green, green_k, verify_resolvent};
use barrier_rhs::test_space::standard_probes;
use barrier_rhs::{Complex64, PhysicalConfig};

fn main() -> barrier_rhs::Result<()> {
    let cfg = PhysicalConfig::default();
    let (x, xp) = (-0.5, 1.7);
    for e in [
        Complex64::new(-3.0, 0.5),
        Complex64::new(4.0, 1.0),
        Complex64::new(4.0, -1.0),
    ] {
        let g = green(&cfg, x, xp, e)?;
        let k = physical_wavenumber(&cfg, e);
        let u = green_k(&cfg, x, xp, k)?;
        println!(
            "E = {e:5}  {:?}  G = {:.8}  wavenumber form {:.8}",
            g.region, g.value, u.value
        );
    }

    let phi = &standard_probes(&cfg)?[0];
    let res = verify_resolvent(&cfg, phi, Complex64::new(2.0, 0.5))?;
    println!("|G (E - H) phi - phi| / |phi| = {res:.2e}");
    Ok(())
}
