//! A test function taken to its two-channel energy representation and
//! back, with Parseval in position, energy and momentum.

use barrier_rhs::eigenfunctions::Family;
use barrier_rhs::test_space::standard_probes;
use barrier_rhs::transforms::{forward_energy, inverse_energy, parseval_check, sample_on};
use barrier_rhs::PhysicalConfig;

fn main() -> barrier_rhs::Result<()> {
    let cfg = PhysicalConfig::default();
    let [left, right, _] = standard_probes(&cfg)?;
    let spec = left.quadrature_spec(&cfg)?;
    let s = sample_on(&cfg, &left, &spec)?;
    for family in [Family::Plus, Family::Minus] {
        let f = forward_energy(&cfg, &s, family, &spec)?;
        let back = inverse_energy(&cfg, &f, &spec)?;
        let (l, r): (f64, f64) = (0..f.len()).fold((0.0, 0.0), |(l, r), i| {
            (
                l + f.weights[i] * f.left_values[i].norm_sqr(),
                r + f.weights[i] * f.right_values[i].norm_sqr(),
            )
        });
        println!(
            "{family:?}: {} nodes, channel weights {l:.6} / {r:.6}, round trip {:.2e}",
            f.len(),
            back.relative_distance(&s)?
        );
    }
    let p = parseval_check(&cfg, &left, &right)?;
    println!(
        "(left, right): position {:.3e}  momentum {:.3e}",
        p.position, p.momentum
    );
    println!(
        "               plus {:.3e}  minus {:.3e}",
        p.energy_plus, p.energy_minus
    );
    Ok(())
}
