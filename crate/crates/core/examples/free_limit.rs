//! As the barrier height goes to zero the scattering data and the energy
//! transform both approach their free counterparts.

use barrier_rhs::free_limit::{free_limit, is_monotone};
use barrier_rhs::PhysicalConfig;

fn main() -> barrier_rhs::Result<()> {
    let rows = free_limit(
        &PhysicalConfig::default(),
        &[1.0, 0.3, 0.1, 0.03, 0.01, 1e-3, 1e-4, 0.0],
    )?;
    println!("{:>8} {:>12} {:>12} {:>12}", "V0", "max|T-1|", "max|R|", "transform");
    for r in &rows {
        println!(
            "{:8.0e} {:12.3e} {:12.3e} {:12.3e}",
            r.v0, r.max_t_defect, r.max_r_left, r.transform_distance
        );
    }
    println!("monotone: {}", is_monotone(&rows));
    Ok(())
}
