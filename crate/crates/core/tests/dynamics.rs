mod common;

use barrier_rhs::barrier::PhysicalConfig;
use barrier_rhs::free_limit::{free_limit, is_monotone, DEFAULT_SEQUENCE};
use barrier_rhs::wavepacket::{run_wavepacket, PacketParams};

#[test]
fn packet_at_half_barrier_height() {
    let cfg = PhysicalConfig::default();
    let params = PacketParams::half_barrier(&cfg).unwrap();
    let late = params.late_time(&cfg).unwrap();
    let run = run_wavepacket(&cfg, params, &[0.0, late]).unwrap();
    assert!(run.initial_error <= 1e-6);
    assert!(run.transmitted[0] < 1e-10);
    assert!((run.late_transmitted() - run.prediction).abs() <= 0.05);
}

#[test]
fn free_packet_is_fully_transmitted() {
    let cfg = PhysicalConfig::default().with_v0(0.0);
    let params = PacketParams {
        center: -20.0,
        width: 2.0,
        momentum: 3.0,
    };
    // Long enough for the spreading tail to clear the barrier too.
    let late = 3.0 * params.late_time(&cfg).unwrap();
    let run = run_wavepacket(&cfg, params, &[late]).unwrap();
    assert!((run.late_transmitted() - 1.0).abs() < 1e-6);
    assert!((run.prediction - 1.0).abs() < 1e-6);
}

#[test]
fn free_limit_defects_shrink() {
    let rows = free_limit(&PhysicalConfig::default(), &DEFAULT_SEQUENCE).unwrap();
    assert!(is_monotone(&rows));
    let last = rows.last().unwrap();
    assert!(last.max_t_defect <= 1e-3 && last.max_r_left <= 1e-3 && last.transform_distance <= 1e-3);

    let tiny = free_limit(&PhysicalConfig::default(), &[1e-6]).unwrap();
    assert!(tiny[0].max_t_defect <= 1e-5);
    let zero = free_limit(&PhysicalConfig::default(), &[0.0]).unwrap();
    assert!(zero[0].max_t_defect < 1e-14 && zero[0].max_r_left < 1e-14 && zero[0].transform_distance < 1e-12);
    assert!(free_limit(&PhysicalConfig::default(), &[0.1, 1.0]).is_err());
}
