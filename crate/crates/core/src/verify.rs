//! Runs the numerical identities as named checks and collects a report.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barrier::{EnergyPoint, PhysicalConfig, I};
use crate::coefficients::plus_coefficients;
use crate::eigenfunctions::{wronskian, Eigenfunction, EigenfunctionId, Family, Region, Side};
use crate::error::{Error, Result};
use crate::greens::{green, green_k, verify_resolvent};
use crate::spectral_measure::{rho_interval, Basis};
use crate::test_space::{
    apply_operator, commutator_check, edge_flatness, functional_bound_check, norm_nml, standard_probes, Commutator,
    NormIndex, Observable, Smooth,
};
use crate::transforms::{
    diagonalization_check, forward_energy, fourier, fourier_reconstruct_at, free_energy_reference, inverse_energy,
    moment_check, parseval_check, reconstruct_points, sample_on,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The identity being checked, in words.
    pub anchor: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: PhysicalConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Coeffs,
    Eigen,
    Green,
    Measure,
    Transforms,
    Testspace,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "coeffs" => Suite::Coeffs,
            "eigen" => Suite::Eigen,
            "green" => Suite::Green,
            "measure" => Suite::Measure,
            "transforms" => Suite::Transforms,
            "testspace" => Suite::Testspace,
            other => return Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyOptions {
    /// Replaces the tolerance of the check with this name.
    pub tol_overrides: BTreeMap<String, f64>,
    /// Scales `T` by `1 + 1e-6` before the unitarity checks, which must then fail.
    pub inject_fault: bool,
}

struct Collector<'a> {
    opts: &'a VerifyOptions,
    checks: Vec<Check>,
}

impl Collector<'_> {
    fn push(&mut self, name: &str, anchor: &str, value: f64, tolerance: f64) {
        let tolerance = self.opts.tol_overrides.get(name).copied().unwrap_or(tolerance);
        self.checks.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        });
    }
}

/// Names of every check, for validating overrides.
pub fn check_names() -> Vec<&'static str> {
    vec![
        "unitarity_left",
        "unitarity_right",
        "reflection_relation",
        "transmission_conjugation",
        "closed_form_transmission",
        "resonance",
        "c1_matching",
        "wronskian_tilde",
        "wronskian_plus",
        "wronskian_constancy",
        "resolvent_residual",
        "unified_green",
        "green_symmetry",
        "measure_off_diagonal",
        "measure_diagonal",
        "measure_basis_agreement",
        "measure_below_threshold",
        "round_trip",
        "parseval",
        "diagonalization",
        "moments",
        "dirac_expansion",
        "fourier_reconstruction",
        "free_collapse",
        "edge_flatness",
        "commutators",
        "norm_identity",
        "functional_bound",
    ]
}

pub fn run_verify(cfg: &PhysicalConfig, suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    cfg.validate()?;
    if let Some(bad) = opts.tol_overrides.keys().find(|k| !check_names().contains(&k.as_str())) {
        return Err(Error::InvalidArgument(format!("no check named {bad:?}")));
    }
    let mut out = Collector {
        opts,
        checks: Vec::new(),
    };
    let run = |s: Suite| suite == Suite::All || suite == s;
    if run(Suite::Coeffs) {
        coeff_checks(cfg, &mut out)?;
    }
    if run(Suite::Eigen) {
        eigen_checks(cfg, &mut out)?;
    }
    if run(Suite::Green) {
        green_checks(cfg, &mut out)?;
    }
    if run(Suite::Measure) {
        measure_checks(cfg, &mut out)?;
    }
    if run(Suite::Transforms) {
        transform_checks(cfg, &mut out)?;
    }
    if run(Suite::Testspace) {
        test_space_checks(cfg, &mut out)?;
    }
    Ok(Report {
        config: *cfg,
        checks: out.checks,
    })
}

fn k_grid() -> Vec<f64> {
    (1..=200).map(|i| 0.01 + (20.0 - 0.01) * i as f64 / 200.0).collect()
}

/// Textbook `|T|^2` of a square barrier.
fn closed_form_t2(cfg: &PhysicalConfig, e: f64) -> f64 {
    let (v0, l, s) = (cfg.v0, cfg.width(), cfg.energy_scale());
    if v0 == 0.0 {
        return 1.0;
    }
    let q2 = s * (e - v0);
    let shape = if q2 < 0.0 {
        let kappa = (-q2).sqrt();
        -(kappa * l).sinh().powi(2)
    } else {
        (q2.sqrt() * l).sin().powi(2)
    };
    1.0 / (1.0 + v0 * v0 * shape / (4.0 * e * (e - v0)))
}

fn coeff_checks(cfg: &PhysicalConfig, out: &mut Collector) -> Result<()> {
    let fault = if out.opts.inject_fault { 1.0 + 1e-6 } else { 1.0 };
    let (mut ul, mut ur, mut rel, mut conj, mut closed) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in k_grid() {
        let c = plus_coefficients(cfg, &EnergyPoint::from_wavenumber(cfg, k.into()))?;
        let t = c.t * fault;
        ul = ul.max((t.norm_sqr() + c.r_l.norm_sqr() - 1.0).abs());
        ur = ur.max((t.norm_sqr() + c.r_r.norm_sqr() - 1.0).abs());
        rel = rel.max((c.r_r * c.t.conj() + c.t * c.r_l.conj()).norm());
        let minus = plus_coefficients(cfg, &EnergyPoint::from_wavenumber(cfg, (-k).into()))?;
        conj = conj.max((minus.t - c.t.conj()).norm());
        let e = cfg.energy_of(k.into()).re;
        if (e - cfg.v0).abs() > 1e-6 {
            closed = closed.max((c.t.norm_sqr() - closed_form_t2(cfg, e)).abs());
        }
    }
    out.push("unitarity_left", "flux conservation |T|^2 + |R_l|^2 = 1", ul, 1e-12);
    out.push("unitarity_right", "flux conservation |T|^2 + |R_r|^2 = 1", ur, 1e-12);
    out.push("reflection_relation", "R_r conj(T) + T conj(R_l) = 0", rel, 1e-12);
    out.push("transmission_conjugation", "T(-k) = conj(T(k))", conj, 1e-12);
    out.push(
        "closed_form_transmission",
        "|T|^2 equals the square-barrier formula",
        closed,
        1e-10,
    );
    let mut res = 0.0f64;
    if cfg.v0 > 0.0 {
        for n in 1..=3 {
            let q = n as f64 * PI / cfg.width();
            let k = (q * q + cfg.energy_scale() * cfg.v0).sqrt();
            let c = plus_coefficients(cfg, &EnergyPoint::from_wavenumber(cfg, k.into()))?;
            res = res.max((c.t.norm_sqr() - 1.0).abs());
        }
    }
    out.push("resonance", "|T|^2 = 1 when q L is a multiple of pi", res, 1e-10);
    Ok(())
}

fn eigen_checks(cfg: &PhysicalConfig, out: &mut Collector) -> Result<()> {
    let build = |family, side, e: Complex64| Eigenfunction::new(cfg, EigenfunctionId::at_energy(cfg, family, side, e));
    let mut matching = 0.0f64;
    for family in [Family::Plus, Family::Minus, Family::Tilde] {
        for i in 0..20 {
            let t = i as f64 / 19.0;
            let e = match family {
                Family::Tilde => Complex64::new(-0.2 - 30.0 * t, 0.5 * (t - 0.5)),
                _ => Complex64::new(0.05 + 40.0 * t, 0.3 * (t - 0.3)),
            };
            for side in [Side::Left, Side::Right] {
                let f = build(family, side, e)?;
                for (outer, x) in [(Region::Left, cfg.a), (Region::Right, cfg.b)] {
                    let (vo, d_o) = f.piece_eval(outer, x);
                    let (vm, dm) = f.piece_eval(Region::Middle, x);
                    matching = matching.max((vo - vm).norm() / vo.norm().max(vm.norm()).max(1e-300));
                    matching = matching.max((d_o - dm).norm() / d_o.norm().max(dm.norm()).max(1e-300));
                }
            }
        }
    }
    out.push(
        "c1_matching",
        "value and slope continuous at both edges",
        matching,
        1e-11,
    );

    let xs = [cfg.a - 1.0, 0.5 * (cfg.a + cfg.b), cfg.b + 2.0];
    let scale = cfg.m / (PI * cfg.hbar * cfg.hbar);
    let mut spread = 0.0f64;
    let mut wronskian_err = |family, e: Complex64, expected: &dyn Fn(&Eigenfunction) -> Complex64| -> Result<f64> {
        let r = build(family, Side::Right, e)?;
        let l = build(family, Side::Left, e)?;
        let want = expected(&r);
        let ws: Vec<Complex64> = xs.iter().map(|&x| wronskian(&r, &l, x)).collect();
        for w in &ws {
            spread = spread.max((w - ws[0]).norm() / want.norm());
        }
        Ok(ws.iter().map(|w| (w - want).norm() / want.norm()).fold(0.0, f64::max))
    };
    let tilde = wronskian_err(Family::Tilde, Complex64::new(-2.0, 0.0), &|f| -scale * f.coefficients.t)?;
    let plus = wronskian_err(Family::Plus, Complex64::new(3.0, 1.0), &|f| {
        I * scale * f.coefficients.t
    })?;
    out.push(
        "wronskian_tilde",
        "W(chi~_r, chi~_l) = -(m / pi hbar^2) T~",
        tilde,
        1e-10,
    );
    out.push("wronskian_plus", "W(chi+_r, chi+_l) = (i m / pi hbar^2) T", plus, 1e-10);
    out.push("wronskian_constancy", "Wronskian independent of x", spread, 1e-10);
    Ok(())
}

fn green_checks(cfg: &PhysicalConfig, out: &mut Collector) -> Result<()> {
    let probes = standard_probes(cfg)?;
    let mut worst = 0.0f64;
    for phi in &probes {
        for e in [
            Complex64::new(1.0, 1.0),
            Complex64::new(-2.0, 0.5),
            Complex64::new(6.0, -1.5),
        ] {
            worst = worst.max(verify_resolvent(cfg, phi, e)?);
        }
    }
    out.push("resolvent_residual", "integral G (E - H) phi = phi", worst, 1e-6);

    let pts = [
        (cfg.a - 1.2, cfg.a + 0.1),
        (cfg.a + 0.2, cfg.b - 0.2),
        (cfg.b - 0.1, cfg.b + 1.0),
        (cfg.a - 2.0, cfg.b + 2.0),
    ];
    let mut unified = 0.0f64;
    let mut symmetry = 0.0f64;
    for k in [
        Complex64::new(2.0, 0.5),
        Complex64::new(0.3, 1.5),
        Complex64::new(-1.0, 0.7),
        Complex64::new(0.0, 2.0),
    ] {
        let e = cfg.energy_of(k);
        for (x, xp) in pts {
            let reg = green(cfg, x, xp, e)?.value;
            let uni = green_k(cfg, x, xp, k)?.value;
            unified = unified.max((reg - uni).norm() / reg.norm().max(uni.norm()).max(1.0));
            symmetry = symmetry.max((reg - green(cfg, xp, x, e)?.value).norm());
        }
    }
    out.push(
        "unified_green",
        "regional Green functions equal the wavenumber form",
        unified,
        1e-10,
    );
    out.push("green_symmetry", "G(x, x') = G(x', x)", symmetry, 1e-14);
    Ok(())
}

fn measure_checks(cfg: &PhysicalConfig, out: &mut Collector) -> Result<()> {
    let (mut off, mut diag, mut agree) = (0.0f64, 0.0f64, 0.0f64);
    for (e1, e2) in [(1.0, 2.0), (0.5, 4.0)] {
        let init = rho_interval(cfg, e1, e2, Basis::Initial)?;
        let fin = rho_interval(cfg, e1, e2, Basis::Final)?;
        for r in [&init, &fin] {
            off = off.max(r.rho[0][1].abs()).max(r.rho[1][0].abs());
            diag = diag
                .max((r.rho[0][0] - (e2 - e1)).abs() / (e2 - e1))
                .max((r.rho[1][1] - (e2 - e1)).abs() / (e2 - e1));
        }
        for i in 0..2 {
            for j in 0..2 {
                agree = agree.max((init.rho[i][j] - fin.rho[i][j]).abs());
            }
        }
    }
    let mut below = 0.0f64;
    for basis in [Basis::Initial, Basis::Final] {
        let r = rho_interval(cfg, -5.0, -1.0, basis)?;
        below = below.max(r.rho.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max));
    }
    out.push("measure_off_diagonal", "rho_12 = rho_21 = 0", off, 1e-6);
    out.push("measure_diagonal", "rho_11 = rho_22 = E2 - E1", diag, 1e-6);
    out.push(
        "measure_basis_agreement",
        "initial and final bases give the same measure",
        agree,
        1e-6,
    );
    out.push("measure_below_threshold", "no spectral mass below E = 0", below, 1e-8);
    Ok(())
}

fn transform_checks(cfg: &PhysicalConfig, out: &mut Collector) -> Result<()> {
    let probes = standard_probes(cfg)?;
    let (mut round, mut diag, mut dirac, mut fourier_err, mut collapse) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let free = cfg.with_v0(0.0);
    for phi in &probes {
        let spec = phi.quadrature_spec(cfg)?;
        let s = sample_on(cfg, phi, &spec)?;
        let peak = s.max_abs();
        let xs: Vec<f64> = (-3..=3).map(|i| phi.center + 0.75 * phi.width * i as f64).collect();
        for family in [Family::Plus, Family::Minus] {
            let f = forward_energy(cfg, &s, family, &spec)?;
            round = round.max(inverse_energy(cfg, &f, &spec)?.relative_distance(&s)?);
            diag = diag.max(diagonalization_check(cfg, phi, family)?);
            if family == Family::Plus {
                for (x, v) in xs.iter().zip(reconstruct_points(cfg, &f, &xs)?) {
                    dirac = dirac.max((v - phi.value(*x)).norm() / peak);
                }
            }
            let u = forward_energy(&free, &s, family, &spec)?;
            let r = free_energy_reference(&free, &s, family, &spec)?;
            let scale = r
                .left_values
                .iter()
                .chain(&r.right_values)
                .map(|v| v.norm())
                .fold(0.0, f64::max);
            for i in 0..u.len() {
                collapse = collapse
                    .max((u.left_values[i] - r.left_values[i]).norm() / scale)
                    .max((u.right_values[i] - r.right_values[i]).norm() / scale);
            }
        }
        let ft = fourier(cfg, &s, &spec)?;
        for &x in &xs {
            fourier_err = fourier_err.max((fourier_reconstruct_at(cfg, &ft, x)? - phi.value(x)).norm() / peak);
        }
    }
    out.push("round_trip", "inverse(forward(phi)) = phi", round, 1e-6);

    let [left, right, _] = probes;
    let mut parseval = 0.0f64;
    let mut moments = 0.0f64;
    for (f, g) in [(&left, &left), (&right, &right), (&left, &right)] {
        let v = parseval_check(cfg, f, g)?;
        let norms = (parseval_check(cfg, f, f)?.position.re * parseval_check(cfg, g, g)?.position.re).sqrt();
        parseval = parseval.max(v.max_spread() / norms);
        for obs in [Observable::H, Observable::P, Observable::Q] {
            for n in 1..=2 {
                moments = moments.max(moment_check(cfg, f, g, n, obs)?.relative_gap());
            }
        }
    }
    out.push(
        "parseval",
        "(phi, psi) equal in position, energy and momentum",
        parseval,
        1e-6,
    );
    out.push("diagonalization", "U H phi = E U phi", diag, 1e-6);
    out.push("moments", "(phi, A^n psi) equal directly and spectrally", moments, 1e-5);
    out.push("dirac_expansion", "phi(x) = sum integral <x|E> <E|phi> dE", dirac, 1e-6);
    out.push(
        "fourier_reconstruction",
        "phi(x) = integral <x|p> <p|phi> dp",
        fourier_err,
        1e-8,
    );
    out.push(
        "free_collapse",
        "V0 = 0 energy data equals Fourier data",
        collapse,
        1e-8,
    );
    Ok(())
}

fn test_space_checks(cfg: &PhysicalConfig, out: &mut Collector) -> Result<()> {
    let probes = standard_probes(cfg)?;
    let (mut flat, mut comm, mut norms, mut bound) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let pairs = [
        Commutator::QP,
        Commutator::HQ,
        Commutator::HP,
        Commutator::HnQ(2),
        Commutator::QnP(2),
        Commutator::HnP(2),
    ];
    for phi in &probes {
        flat = flat.max(edge_flatness(cfg, phi, 4));
        flat = flat.max(edge_flatness(cfg, &apply_operator(cfg, phi, Observable::H), 2));
        for pair in pairs {
            comm = comm.max(commutator_check(cfg, phi, pair)?);
        }
        let h = apply_operator(cfg, phi, Observable::H);
        for (n, m, l) in [(0, 0, 0), (1, 1, 0), (2, 0, 1)] {
            let lhs = norm_nml(cfg, &h, NormIndex::new(n, m, l)?);
            let rhs = norm_nml(cfg, phi, NormIndex::new(n, m, l + 1)?);
            norms = norms.max((lhs - rhs).abs() / rhs);
        }
        for e in [1.0, 4.0] {
            let (lhs, rhs) = functional_bound_check(cfg, phi, e, Family::Plus, Side::Left)?;
            bound = bound.max(lhs / rhs);
        }
    }
    out.push("edge_flatness", "phi and H phi flat at both edges", flat, 1e-8);
    out.push("commutators", "canonical commutation relations", comm, 1e-7);
    out.push("norm_identity", "||H phi||_{n,m,l} = ||phi||_{n,m,l+1}", norms, 1e-8);
    out.push("functional_bound", "|<phi|E>| / bound", bound, 1.0);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_injection_breaks_unitarity() {
        let cfg = PhysicalConfig::default();
        let clean = run_verify(&cfg, Suite::Coeffs, &VerifyOptions::default()).unwrap();
        assert!(clean.passed(), "{:?}", clean.failures());
        let opts = VerifyOptions {
            inject_fault: true,
            ..Default::default()
        };
        let broken = run_verify(&cfg, Suite::Coeffs, &opts).unwrap();
        let names: Vec<_> = broken.failures().iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"unitarity_left") && names.contains(&"unitarity_right"));
    }

    #[test]
    fn suite_filter_and_overrides() {
        let cfg = PhysicalConfig::default();
        let mut opts = VerifyOptions::default();
        opts.tol_overrides.insert("measure_diagonal".into(), 0.0);
        let r = run_verify(&cfg, Suite::Measure, &opts).unwrap();
        assert!(r.checks.iter().all(|c| c.name.starts_with("measure")));
        assert!(!r.passed());
        opts.tol_overrides.insert("nonsense".into(), 1.0);
        assert!(run_verify(&cfg, Suite::Measure, &opts).is_err());
        assert_eq!("green".parse::<Suite>().unwrap(), Suite::Green);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn closed_form_is_unity_off_barrier() {
        let cfg = PhysicalConfig::default().with_v0(0.0);
        assert_eq!(closed_form_t2(&cfg, 3.0), 1.0);
    }
}
