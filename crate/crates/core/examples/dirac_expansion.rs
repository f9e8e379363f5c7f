//! Pointwise reconstruction of a test function from its energy and momentum
//! components.

use barrier_rhs::eigenfunctions::Family;
use barrier_rhs::test_space::{standard_probes, Smooth};
use barrier_rhs::transforms::{fourier, fourier_reconstruct_at, reconstruct_at, sample_on};
use barrier_rhs::PhysicalConfig;

fn main() -> barrier_rhs::Result<()> {
    let cfg = PhysicalConfig::default();
    let phi = &standard_probes(&cfg)?[2];
    let spec = phi.quadrature_spec(&cfg)?;
    let ft = fourier(&cfg, &sample_on(&cfg, phi, &spec)?, &spec)?;
    println!("{:>8} {:>12} {:>10} {:>10}", "x", "|phi|", "energy", "momentum");
    for i in -3..=3 {
        let x = phi.center + 0.75 * phi.width * i as f64;
        let want = phi.value(x);
        let e = reconstruct_at(&cfg, phi, x, Family::Plus)?;
        let p = fourier_reconstruct_at(&cfg, &ft, x)?;
        println!(
            "{x:8.4} {:12.6e} {:10.1e} {:10.1e}",
            want.norm(),
            (e - want).norm(),
            (p - want).norm()
        );
    }
    Ok(())
}
