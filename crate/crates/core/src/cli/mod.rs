//! Command-line front end: dataset generation and the verification suite.
//!
//! Settings come from flags, then an optional `key = value` config file,
//! then defaults. Exit codes: 0 success, 1 failed verification, 2 bad
//! input, 3 numerical failure.

pub mod output;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::barrier::{physical_wavenumber, PhysicalConfig};
use crate::coefficients::plus_coefficients;
use crate::eigenfunctions::{Eigenfunction, EigenfunctionId, Family, Side};
use crate::error::Error;
use crate::free_limit::{free_limit, is_monotone, DEFAULT_SEQUENCE};
use crate::greens::{GreenKernel, GreenRegion};
use crate::test_space::{default_sigma, make_test_function};
use crate::transforms::{forward_energy, inverse_energy, sample_on};
use crate::verify::{run_verify, Suite, VerifyOptions};
use crate::wavepacket::{run_wavepacket, PacketParams};
use crate::EnergyPoint;
use output::{write_json, Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "barrier-rhs",
    version,
    about = "Rectangular-barrier scattering toolkit",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// Plain-text `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Replace a verification tolerance, e.g. `--tol-override parseval=1e-5`.
    #[arg(long = "tol-override", global = true, value_parser = parse_override)]
    tol_override: Vec<(String, f64)>,

    #[arg(long, global = true)]
    m: Option<f64>,
    #[arg(long, global = true)]
    hbar: Option<f64>,
    #[arg(long, global = true)]
    v0: Option<f64>,
    #[arg(long, global = true)]
    a: Option<f64>,
    #[arg(long, global = true)]
    b: Option<f64>,

    #[arg(long, global = true)]
    x_min: Option<f64>,
    #[arg(long, global = true)]
    x_max: Option<f64>,
    #[arg(long, global = true)]
    x_count: Option<usize>,
    #[arg(long, global = true)]
    k_min: Option<f64>,
    #[arg(long, global = true)]
    k_max: Option<f64>,
    #[arg(long, global = true)]
    k_count: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Plus,
    Minus,
    Tilde,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Plus => Family::Plus,
            FamilyArg::Minus => Family::Minus,
            FamilyArg::Tilde => Family::Tilde,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Coeffs,
    Eigen,
    Green,
    Measure,
    Transforms,
    Testspace,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scattering amplitudes on the k grid.
    Coeffs,
    /// One eigenfunction sampled on the x grid.
    #[command(allow_negative_numbers = true)]
    Eigen {
        #[arg(long, value_enum, default_value = "plus")]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long)]
        energy: f64,
        #[arg(long, default_value_t = 0.0)]
        energy_im: f64,
    },
    /// Green function on the x-by-x grid, at an energy or a wavenumber.
    #[command(allow_negative_numbers = true)]
    Green {
        #[arg(long, conflicts_with = "k")]
        energy: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        energy_im: f64,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        k_im: f64,
    },
    /// Energy representation of a Gaussian test function.
    #[command(allow_negative_numbers = true)]
    Transform {
        #[arg(long, default_value_t = -5.0)]
        center: f64,
        #[arg(long, default_value_t = 0.8)]
        width: f64,
        #[arg(long, default_value_t = 2.0)]
        momentum: f64,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long, value_enum, default_value = "plus")]
        family: FamilyArg,
    },
    /// Run the identity checks and report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Perturb T so the unitarity checks fail.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Evolve a packet through the barrier.
    #[command(allow_negative_numbers = true)]
    Wavepacket {
        #[arg(long)]
        center: Option<f64>,
        #[arg(long)]
        width: Option<f64>,
        #[arg(long)]
        momentum: Option<f64>,
        #[arg(long, default_value_t = 5)]
        snapshots: usize,
        /// Emit every n-th position node.
        #[arg(long, default_value_t = 8)]
        x_stride: usize,
    },
    /// Scattering and transform defects as V0 goes to zero.
    #[command(allow_negative_numbers = true)]
    FreeLimit {
        #[arg(long, value_delimiter = ',')]
        v0_sequence: Option<Vec<f64>>,
    },
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|e| format!("bad tolerance {value:?}: {e}"))?;
    Ok((name.trim().to_string(), v))
}

/// Everything a command needs, after merging flags, file and defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub physical: PhysicalConfig,
    pub x_range: (f64, f64),
    pub x_count: usize,
    pub k_range: (f64, f64),
    pub k_count: usize,
    pub tol_overrides: BTreeMap<String, f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Numeric(Error),
    Verification(Vec<String>),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_)
            | Error::InvalidArgument(_)
            | Error::InvalidGrid(_)
            | Error::InvalidInterval { .. } => Failure::Input(e.to_string()),
            other => Failure::Numeric(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses a `key = value` file with `#` comments.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

const FILE_KEYS: [&str; 13] = [
    "m", "hbar", "v0", "a", "b", "x_min", "x_max", "x_count", "k_min", "k_max", "k_count", "format", "out",
];

impl RunConfig {
    fn resolve(cli: &Cli) -> Result<Self, String> {
        let file = match &cli.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        let mut tol_overrides = BTreeMap::new();
        for (k, v) in &file {
            if let Some(name) = k.strip_prefix("tol.") {
                let t = v.parse().map_err(|e| format!("config key {k}: {e}"))?;
                tol_overrides.insert(name.to_string(), t);
            } else if !FILE_KEYS.contains(&k.as_str()) {
                return Err(format!("unknown config key {k:?}"));
            }
        }
        tol_overrides.extend(cli.tol_override.iter().cloned());

        fn pick<T: std::str::FromStr>(
            flag: Option<T>,
            file: &BTreeMap<String, String>,
            key: &str,
            default: T,
        ) -> Result<T, String>
        where
            T::Err: std::fmt::Display,
        {
            match (flag, file.get(key)) {
                (Some(v), _) => Ok(v),
                (None, Some(s)) => s.parse().map_err(|e| format!("config key {key}: {e}")),
                (None, None) => Ok(default),
            }
        }
        let d = PhysicalConfig::default();
        let physical = PhysicalConfig::new(
            pick(cli.m, &file, "m", d.m)?,
            pick(cli.hbar, &file, "hbar", d.hbar)?,
            pick(cli.v0, &file, "v0", d.v0)?,
            pick(cli.a, &file, "a", d.a)?,
            pick(cli.b, &file, "b", d.b)?,
        )
        .map_err(|e| e.to_string())?;
        let l = physical.width();
        let x_range = (
            pick(cli.x_min, &file, "x_min", physical.a - 2.0 * l)?,
            pick(cli.x_max, &file, "x_max", physical.b + 2.0 * l)?,
        );
        let k_range = (
            pick(cli.k_min, &file, "k_min", 0.01)?,
            pick(cli.k_max, &file, "k_max", 20.0)?,
        );
        let x_count = pick(cli.x_count, &file, "x_count", 201)?;
        let k_count = pick(cli.k_count, &file, "k_count", 200)?;
        if x_count < 16 || k_count < 16 {
            return Err("node counts must be at least 16".into());
        }
        if !(x_range.0 < x_range.1 && k_range.0 < k_range.1) {
            return Err("grid ranges must be increasing".into());
        }
        let format = match (cli.format, file.get("format")) {
            (Some(f), _) => f,
            (None, Some(s)) => Format::from_str(s, true)?,
            (None, None) => Format::Csv,
        };
        let out = cli.out.clone().or_else(|| file.get("out").map(PathBuf::from));
        Ok(Self {
            physical,
            x_range,
            x_count,
            k_range,
            k_count,
            tol_overrides,
            format,
            out,
        })
    }

    fn x_grid(&self) -> Vec<f64> {
        linspace(self.x_range, self.x_count)
    }

    fn k_grid(&self) -> Vec<f64> {
        linspace(self.k_range, self.k_count)
    }

    fn header(&self, table: Table, quantity: &str) -> Table {
        let p = &self.physical;
        table
            .meta("quantity", quantity.replace(' ', "_"))
            .meta("m", p.m)
            .meta("hbar", p.hbar)
            .meta("v0", p.v0)
            .meta("a", p.a)
            .meta("b", p.b)
    }
}

fn linspace((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(Path::new(p))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn configure_threads() -> Result<(), String> {
    if let Ok(raw) = std::env::var("BARRIER_RHS_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .map_err(|_| format!("BARRIER_RHS_THREADS must be a positive integer, got {raw:?}"))?;
        if n == 0 {
            return Err("BARRIER_RHS_THREADS must be positive".into());
        }
        // A pool may already exist when embedded; that is not an error.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Entry point for the binary.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Verification(names)) => {
            eprintln!("verification failed: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    configure_threads().map_err(Failure::Input)?;
    let rc = RunConfig::resolve(cli).map_err(Failure::Input)?;
    let table = match &cli.command {
        Command::Coeffs => cmd_coeffs(&rc)?,
        Command::Eigen {
            family,
            side,
            energy,
            energy_im,
        } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            cmd_eigen(&rc, (*family).into(), side, Complex64::new(*energy, *energy_im))?
        }
        Command::Green {
            energy,
            energy_im,
            k,
            k_im,
        } => {
            let point = match (energy, k) {
                (Some(e), None) => SpectralPoint::Energy(Complex64::new(*e, *energy_im)),
                (None, Some(k)) => SpectralPoint::Wavenumber(Complex64::new(*k, *k_im)),
                _ => return Err(Failure::Input("give exactly one of --energy or --k".into())),
            };
            cmd_green(&rc, point)?
        }
        Command::Transform {
            center,
            width,
            momentum,
            sigma,
            family,
        } => cmd_transform(&rc, *center, *width, *momentum, *sigma, (*family).into())?,
        Command::Verify { suite, inject_fault } => return cmd_verify(&rc, *suite, *inject_fault),
        Command::Wavepacket {
            center,
            width,
            momentum,
            snapshots,
            x_stride,
        } => cmd_wavepacket(&rc, *center, *width, *momentum, *snapshots, *x_stride)?,
        Command::FreeLimit { v0_sequence } => {
            let seq = v0_sequence.clone().unwrap_or_else(|| DEFAULT_SEQUENCE.to_vec());
            cmd_free_limit(&rc, &seq)?
        }
    };
    let mut out = sink(&rc.out)?;
    table.write(rc.format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn re_im(z: Complex64) -> [Cell; 2] {
    [z.re.into(), z.im.into()]
}

pub fn cmd_coeffs(rc: &RunConfig) -> Result<Table, Error> {
    let cfg = &rc.physical;
    let names = ["t", "r_r", "r_l", "a_r", "b_r", "a_l", "b_l"];
    let mut cols = vec!["k".to_string(), "e".to_string()];
    for n in names {
        cols.push(format!("{n}_re"));
        cols.push(format!("{n}_im"));
    }
    cols.extend(["t2", "r_l2", "unitarity_defect"].map(String::from));
    let mut table = rc.header(
        Table {
            columns: cols,
            ..Default::default()
        },
        "plus-family scattering and interior amplitudes",
    );
    for k in rc.k_grid() {
        let c = plus_coefficients(cfg, &EnergyPoint::from_wavenumber(cfg, k.into()))?;
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let inner = c.interior.map_or([nan; 4], |i| [i.a_r, i.b_r, i.a_l, i.b_l]);
        let mut row: Vec<Cell> = vec![k.into(), cfg.energy_of(k.into()).re.into()];
        for z in [c.t, c.r_r, c.r_l].into_iter().chain(inner) {
            row.extend(re_im(z));
        }
        let (dl, dr) = c.unitarity_defects();
        row.extend([c.t.norm_sqr().into(), c.r_l.norm_sqr().into(), dl.max(dr).into()]);
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_eigen(rc: &RunConfig, family: Family, side: Side, e: Complex64) -> Result<Table, Error> {
    let cfg = &rc.physical;
    let f = Eigenfunction::new(cfg, EigenfunctionId::at_energy(cfg, family, side, e))?;
    let mut table = rc
        .header(Table::new(&["x", "re", "im", "abs"]), "scattering eigenfunction")
        .meta("family", format!("{family:?}").to_lowercase())
        .meta("side", format!("{side:?}").to_lowercase())
        .meta("energy", e);
    for x in rc.x_grid() {
        let v = f.eval(x);
        table.push(vec![x.into(), v.re.into(), v.im.into(), v.norm().into()]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy)]
pub enum SpectralPoint {
    Energy(Complex64),
    Wavenumber(Complex64),
}

fn region_name(r: GreenRegion) -> &'static str {
    match r {
        GreenRegion::LeftHalf => "left_half",
        GreenRegion::FirstQuadrant => "first_quadrant",
        GreenRegion::FourthQuadrant => "fourth_quadrant",
        GreenRegion::UnifiedK => "unified_k",
    }
}

/// Rows `(x, x', G)` plus the gap to the other evaluator where both exist.
pub fn cmd_green(rc: &RunConfig, point: SpectralPoint) -> Result<Table, Error> {
    let cfg = &rc.physical;
    let (main, other) = match point {
        SpectralPoint::Energy(e) => {
            let main = GreenKernel::new(cfg, e)?;
            let k = physical_wavenumber(cfg, e);
            (main, GreenKernel::from_wavenumber(cfg, k).ok())
        }
        SpectralPoint::Wavenumber(k) => {
            let main = GreenKernel::from_wavenumber(cfg, k)?;
            let other = if k.im > 0.0 {
                GreenKernel::new(cfg, cfg.energy_of(k)).ok()
            } else {
                None
            };
            (main, other)
        }
    };
    let mut table = rc
        .header(
            Table::new(&["x", "x_prime", "re", "im", "region", "cross_check"]),
            "resolvent kernel",
        )
        .meta("energy", main.e);
    let xs = rc.x_grid();
    for &x in &xs {
        for &xp in &xs {
            let g = main.eval(x, xp);
            let gap = other
                .as_ref()
                .map_or(f64::NAN, |o| (o.eval(x, xp) - g).norm() / g.norm().max(1.0));
            table.push(vec![
                x.into(),
                xp.into(),
                g.re.into(),
                g.im.into(),
                region_name(main.region).into(),
                gap.into(),
            ]);
        }
    }
    Ok(table)
}

pub fn cmd_transform(
    rc: &RunConfig,
    center: f64,
    width: f64,
    momentum: f64,
    sigma: Option<f64>,
    family: Family,
) -> Result<Table, Error> {
    let cfg = &rc.physical;
    let phi = make_test_function(
        cfg,
        center,
        width,
        momentum,
        sigma.unwrap_or_else(|| default_sigma(cfg)),
    )?;
    let spec = phi.quadrature_spec(cfg)?;
    let s = sample_on(cfg, &phi, &spec)?;
    let f = forward_energy(cfg, &s, family, &spec)?;
    let round_trip = inverse_energy(cfg, &f, &spec)?.relative_distance(&s)?;
    let norm_ratio = f.norm_sqr().sqrt() / s.norm();
    let mut table = rc
        .header(
            Table::new(&["e", "k", "left_re", "left_im", "right_re", "right_im"]),
            "energy representation of a test function",
        )
        .meta("family", format!("{family:?}").to_lowercase())
        .meta("round_trip_error", format!("{round_trip:e}"))
        .meta("norm_ratio", norm_ratio);
    for i in 0..f.len() {
        let mut row: Vec<Cell> = vec![f.grid[i].into(), f.wavenumbers[i].into()];
        row.extend(re_im(f.left_values[i]));
        row.extend(re_im(f.right_values[i]));
        table.push(row);
    }
    Ok(table)
}

fn cmd_verify(rc: &RunConfig, suite: SuiteArg, inject_fault: bool) -> Result<(), Failure> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Coeffs => Suite::Coeffs,
        SuiteArg::Eigen => Suite::Eigen,
        SuiteArg::Green => Suite::Green,
        SuiteArg::Measure => Suite::Measure,
        SuiteArg::Transforms => Suite::Transforms,
        SuiteArg::Testspace => Suite::Testspace,
    };
    let opts = VerifyOptions {
        tol_overrides: rc.tol_overrides.clone(),
        inject_fault,
    };
    let report = run_verify(&rc.physical, suite, &opts)?;
    let mut out = sink(&rc.out)?;
    match rc.format {
        Format::Json => write_json(&report, &mut out)?,
        Format::Csv => {
            let mut table = rc.header(
                Table::new(&["name", "anchor", "value", "tolerance", "pass"]),
                "verification report",
            );
            for c in &report.checks {
                table.push(vec![
                    c.name.as_str().into(),
                    c.anchor.as_str().into(),
                    c.value.into(),
                    c.tolerance.into(),
                    c.pass.into(),
                ]);
            }
            table.write(Format::Csv, &mut out)?;
        }
    }
    out.flush()?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(
            report.failures().iter().map(|c| c.name.clone()).collect(),
        ))
    }
}

pub fn cmd_wavepacket(
    rc: &RunConfig,
    center: Option<f64>,
    width: Option<f64>,
    momentum: Option<f64>,
    snapshots: usize,
    x_stride: usize,
) -> Result<Table, Error> {
    let cfg = &rc.physical;
    if snapshots < 2 || x_stride == 0 {
        return Err(Error::InvalidArgument(
            "need at least 2 snapshots and a positive stride".into(),
        ));
    }
    let base = match PacketParams::half_barrier(cfg) {
        Ok(p) => p,
        Err(_) => PacketParams {
            center: cfg.a - 30.0,
            width: 3.0,
            momentum: 3.0 * cfg.hbar,
        },
    };
    let params = PacketParams {
        center: center.unwrap_or(base.center),
        width: width.unwrap_or(base.width),
        momentum: momentum.unwrap_or(base.momentum),
    };
    let late = params.late_time(cfg)?;
    let times = linspace((0.0, late), snapshots);
    let run = run_wavepacket(cfg, params, &times)?;
    let mut table = rc
        .header(Table::new(&["t", "x", "density"]), "packet probability density")
        .meta("transmitted", run.late_transmitted())
        .meta("prediction", run.prediction)
        .meta("initial_error", format!("{:e}", run.initial_error));
    for (t, snap) in run.times.iter().zip(&run.snapshots) {
        for (x, v) in snap.grid.iter().zip(&snap.values).step_by(x_stride) {
            table.push(vec![(*t).into(), (*x).into(), v.norm_sqr().into()]);
        }
    }
    Ok(table)
}

pub fn cmd_free_limit(rc: &RunConfig, seq: &[f64]) -> Result<Table, Error> {
    let rows = free_limit(&rc.physical, seq)?;
    let mut table = rc
        .header(
            Table::new(&["v0", "max_t_defect", "max_r_left", "transform_distance"]),
            "free limit of the barrier",
        )
        .meta("monotone", is_monotone(&rows));
    for r in rows {
        table.push(vec![
            r.v0.into(),
            r.max_t_defect.into(),
            r.max_r_left.into(),
            r.transform_distance.into(),
        ]);
    }
    Ok(table)
}
