//! Functions flat at the barrier edges keep every polynomial in P, Q, H
//! well defined; check the commutators and the graded norms.

use barrier_rhs::eigenfunctions::{Family, Side};
use barrier_rhs::test_space::{
    apply_operator, commutator_check, edge_flatness, functional_bound_check, make_test_function, norm_nml, Commutator,
    NormIndex, Observable, Smooth,
};
use barrier_rhs::PhysicalConfig;

fn main() -> barrier_rhs::Result<()> {
    let cfg = PhysicalConfig::default();
    let phi = make_test_function(&cfg, 0.2, 0.6, 1.0, 0.1)?;
    println!(
        "phi(a) = {}, phi near a = {:.3e}",
        phi.value(cfg.a),
        phi.value(cfg.a + 1e-3).norm()
    );
    println!("edge flatness to 4th order: {:.1e}", edge_flatness(&cfg, &phi, 4));

    for pair in [
        Commutator::QP,
        Commutator::HQ,
        Commutator::HP,
        Commutator::HnQ(2),
        Commutator::QnP(2),
    ] {
        println!("{pair:?}: residual {:.1e}", commutator_check(&cfg, &phi, pair)?);
    }

    let h = apply_operator(&cfg, phi, Observable::H);
    for (n, m, l) in [(0, 0, 0), (1, 1, 0), (2, 0, 1)] {
        let lhs = norm_nml(&cfg, &h, NormIndex::new(n, m, l)?);
        let rhs = norm_nml(&cfg, &phi, NormIndex::new(n, m, l + 1)?);
        println!(
            "||H phi||_({n},{m},{l}) = {lhs:.10}  ||phi||_({n},{m},{}) = {rhs:.10}",
            l + 1
        );
    }

    let (lhs, rhs) = functional_bound_check(&cfg, &phi, 3.0, Family::Plus, Side::Left)?;
    println!("|<phi|E=3>| = {lhs:.4e} <= {rhs:.4e}");
    Ok(())
}
