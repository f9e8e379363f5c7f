//! A Gaussian packet with mean energy half the barrier height, evolved
//! through the barrier; the transmitted mass is compared with the
//! |T|^2 average over its momentum distribution.

use barrier_rhs::wavepacket::{run_wavepacket, PacketParams};
use barrier_rhs::PhysicalConfig;

fn main() -> barrier_rhs::Result<()> {
    let cfg = PhysicalConfig::default().with_v0(2.0);
    let params = PacketParams::half_barrier(&cfg)?;
    let late = params.late_time(&cfg)?;
    let times: Vec<f64> = (0..=6).map(|i| late * i as f64 / 6.0).collect();
    let run = run_wavepacket(&cfg, params, &times)?;
    for (t, p) in run.times.iter().zip(&run.transmitted) {
        println!("t = {t:7.3}  mass beyond b = {p:.6}");
    }
    println!(
        "prediction {:.6}, reconstruction error at t = 0 {:.1e}",
        run.prediction, run.initial_error
    );
    Ok(())
}
