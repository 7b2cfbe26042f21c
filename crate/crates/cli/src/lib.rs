//! `kdp` command-line front end. Each subcommand is a `cmd_*` function that
//! writes human-readable output to `out`, diagnostics to `err`, and returns
//! the process exit code.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod angle;
pub mod manifest;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use kdp::bell::{bell_lhs, correlation, violates_bound, violation_scan};
use kdp::config::RunConfig;
use kdp::dynamics::{evolve, Observer};
use kdp::fields::{energy_density, poynting};
use kdp::lorentz::{boost, rotation};
use kdp::snapshot::{load_snapshot, save_snapshot, write_observables_csv, write_time_series_csv};
use kdp::{BellSettings, BetaRep64, FieldGrid64, Matrix10, Packing, TwoBeamState64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use angle::Angle;
pub use manifest::{CommandKind, RunManifest};

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const CFL: i32 = 3;
    pub const UNSTABLE: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "kdp",
    version,
    about = "Electrodynamics in KDP first-order matrix form"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebra identities and the span dimension of the built-in representation.
    Verify(VerifyArgs),
    /// Evolve the initial condition described by a run configuration file.
    Evolve(EvolveArgs),
    /// Apply a rotation or boost to every site of a snapshot.
    Transform(TransformArgs),
    /// Evaluate polarization correlations and the Bell combination.
    Bell(BellArgs),
    /// Export per-site energy density and Poynting vector of a snapshot as CSV.
    Observables(ObservablesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    KeyValue,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest accepted Frobenius residual.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Seed of the random-field sweep.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random fields in the sweep.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Directory for report.txt and manifest.txt.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Test hook: zero beta_0 before verifying.
    #[arg(long, hide = true)]
    pub corrupt_beta0: bool,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    pub config: PathBuf,
    /// Overrides `output_dir` from the config file.
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    pub input: PathBuf,
    pub output: PathBuf,
    /// Rotation axis: x, y, z or three comma-separated components.
    #[arg(long, value_parser = parse_axis, requires = "angle", conflicts_with = "boost")]
    pub rotate: Option<[f64; 3]>,
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Option<Angle>,
    /// Boost direction: x, y, z or three comma-separated components.
    #[arg(long, value_parser = parse_axis, requires = "rapidity")]
    pub boost: Option<[f64; 3]>,
    #[arg(long, allow_hyphen_values = true)]
    pub rapidity: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    #[arg(long, allow_hyphen_values = true, required_unless_present = "scan")]
    pub alpha: Option<Angle>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "scan")]
    pub beta: Option<Angle>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "scan")]
    pub gamma: Option<Angle>,
    /// Scan N angles per setting over [0, 180) degrees.
    #[arg(long, conflicts_with_all = ["alpha", "beta", "gamma"])]
    pub scan: Option<usize>,
    /// CSV destination; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ObservablesArgs {
    pub snapshot: PathBuf,
    /// CSV destination; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Wave speed used for the Poynting vector.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

fn parse_axis(s: &str) -> Result<[f64; 3], String> {
    match s {
        "x" => return Ok([1.0, 0.0, 0.0]),
        "y" => return Ok([0.0, 1.0, 0.0]),
        "z" => return Ok([0.0, 0.0, 1.0]),
        _ => {}
    }
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad axis {s:?}"))?;
    let v: [f64; 3] = parts
        .try_into()
        .map_err(|_| format!("axis {s:?} needs three components"))?;
    if !v.iter().all(|x| x.is_finite()) || v.iter().all(|&x| x == 0.0) {
        return Err(format!("axis {s:?} must be finite and nonzero"));
    }
    Ok(v)
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(exit::FAILURE, format!("I/O error: {e}"))
    }
}

fn finish(result: Result<i32, Failure>, err: &mut dyn Write) -> i32 {
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn input_failure(what: &Path) -> impl Fn(kdp::Error) -> Failure + '_ {
    move |e| Failure::new(exit::USAGE, format!("{}: {e}", what.display()))
}

fn standard_rep() -> Result<BetaRep64, Failure> {
    BetaRep64::standard().map_err(|e| Failure::new(exit::FAILURE, e.to_string()))
}

fn echo_manifest(m: &RunManifest, err: &mut dyn Write) {
    for line in m.render().lines() {
        let _ = writeln!(err, "# {line}");
    }
}

/// Manifest path next to a single output file.
fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

fn ensure_parent(path: &Path) -> std::io::Result<()> {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => std::fs::create_dir_all(p),
        _ => Ok(()),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };
    match &cli.command {
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Evolve(a) => cmd_evolve(a, out, err),
        Command::Transform(a) => cmd_transform(a, out, err),
        Command::Bell(a) => cmd_bell(a, out, err),
        Command::Observables(a) => cmd_observables(a, out, err),
    }
}

struct Sweep {
    energy: f64,
    poynting: f64,
    roundtrip: f64,
}

/// Seeded random fields compared against the textbook formulas.
fn random_sweep(rep: &BetaRep64, seed: u64, samples: usize) -> Sweep {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Sweep {
        energy: 0.0,
        poynting: 0.0,
        roundtrip: 0.0,
    };
    for _ in 0..samples {
        let mut v = || std::array::from_fn::<f64, 3, _>(|_| r.random_range(-1.0..1.0));
        let f = kdp::EMFields64::new(v(), v(), v(), 0.5);
        let l0 = r.random_range(0.1..10.0);
        let p = Packing::new(l0);
        let psi = p.pack(&f);
        let u = (kdp::fields::dot3(f.e, f.e) + kdp::fields::dot3(f.h, f.h)) / 2.0;
        s.energy = s.energy.max((energy_density(&psi) - u).abs() / u);
        let want = kdp::fields::cross(f.e, f.h);
        let got = poynting(rep, &psi, 1.0);
        let scale = u.max(f64::MIN_POSITIVE);
        for k in 0..3 {
            s.poynting = s.poynting.max((got[k] - want[k]).abs() / scale);
        }
        let back = p.unpack_real(&psi);
        let pairs = back
            .e
            .iter()
            .chain(&back.h)
            .chain(&back.a)
            .zip(f.e.iter().chain(&f.h).chain(&f.a));
        for (a, b) in pairs {
            s.roundtrip = s.roundtrip.max((a - b).abs());
        }
    }
    s
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<i32, Failure> {
        if !(args.tolerance >= 0.0) {
            return Err(Failure::new(exit::USAGE, "tolerance must be non-negative"));
        }
        let manifest = RunManifest::new(
            CommandKind::Verify,
            args.seed,
            vec![
                ("tolerance".into(), format!("{:e}", args.tolerance)),
                ("samples".into(), args.samples.to_string()),
                ("corrupt_beta0".into(), args.corrupt_beta0.to_string()),
            ],
        );
        echo_manifest(&manifest, err);
        // the checked constructor would refuse a corrupted representation
        let mut rep = standard_rep()?;
        if args.corrupt_beta0 {
            rep = rep.with_beta_replaced(0, Matrix10::zero());
        }
        let report = kdp::algebra::verify_algebra(&rep, args.tolerance);
        let sweep = random_sweep(&rep, args.seed, args.samples);
        let mut text = match args.format {
            ReportFormat::Text => report.to_text(),
            ReportFormat::KeyValue => report.to_key_value(),
        };
        let sep = if args.format == ReportFormat::Text {
            " = "
        } else {
            "="
        };
        text.push_str(&format!("sweep_seed{sep}{}\n", args.seed));
        text.push_str(&format!("sweep_samples{sep}{}\n", args.samples));
        text.push_str(&format!("sweep_energy_rel{sep}{:e}\n", sweep.energy));
        text.push_str(&format!("sweep_poynting_rel{sep}{:e}\n", sweep.poynting));
        text.push_str(&format!("sweep_pack_roundtrip{sep}{:e}\n", sweep.roundtrip));
        out.write_all(text.as_bytes())?;
        if let Some(dir) = &args.out {
            std::fs::create_dir_all(dir)?;
            manifest
                .with_output(dir)
                .write_to(&dir.join("manifest.txt"))?;
            std::fs::write(dir.join("report.txt"), &text)?;
        }
        let ok = report.max_residual <= args.tolerance && report.span_dimension == 100;
        Ok(if ok { exit::OK } else { exit::FAILURE })
    })();
    finish(result, err)
}

struct SnapshotWriter<'a> {
    dir: &'a Path,
    every: usize,
}

impl SnapshotWriter<'_> {
    fn path(&self, step: usize) -> PathBuf {
        self.dir.join(format!("snapshot_{step:06}.kdp"))
    }
}

impl Observer<f64> for SnapshotWriter<'_> {
    fn observe(&mut self, step: usize, grid: &FieldGrid64) -> kdp::Result<()> {
        if self.every > 0 && step.is_multiple_of(self.every) {
            save_snapshot(grid, &self.path(step))?;
        }
        Ok(())
    }
}

pub fn cmd_evolve(args: &EvolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<i32, Failure> {
        let bytes = std::fs::read(&args.config).map_err(|e| {
            Failure::new(
                exit::USAGE,
                format!("cannot read {}: {e}", args.config.display()),
            )
        })?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| {
            Failure::new(
                exit::USAGE,
                format!("{} is not UTF-8", args.config.display()),
            )
        })?;
        let cfg = RunConfig::parse(&text).map_err(input_failure(&args.config))?;
        let ecfg = cfg
            .evolution_config()
            .map_err(input_failure(&args.config))?;
        if let Err(e) = ecfg.check_cfl(cfg.dx) {
            return Err(Failure::new(exit::CFL, e.to_string()));
        }
        let grid = cfg.initial_grid().map_err(input_failure(&args.config))?;
        let dir = args
            .output_dir
            .clone()
            .unwrap_or_else(|| cfg.output_dir.clone());

        let manifest = RunManifest::new(CommandKind::Evolve, cfg.seed, Vec::new())
            .with_config(&args.config, &bytes)
            .with_output(&dir);
        echo_manifest(&manifest, err);
        std::fs::create_dir_all(&dir)?;
        manifest.write_to(&dir.join("manifest.txt"))?;

        let rep = standard_rep()?;
        let mut writer = SnapshotWriter {
            dir: &dir,
            every: cfg.snapshot_every,
        };
        if cfg.snapshot_every > 0 {
            save_snapshot(&grid, &writer.path(0))
                .map_err(|e| Failure::new(exit::FAILURE, e.to_string()))?;
        }
        let evo = match evolve(&rep, &grid, &ecfg, &mut writer) {
            Ok(e) => e,
            Err(e @ kdp::Error::NonFinite { .. }) => {
                return Err(Failure::new(exit::UNSTABLE, format!("instability: {e}")));
            }
            Err(e) => return Err(Failure::new(exit::FAILURE, e.to_string())),
        };
        let csv = std::fs::File::create(dir.join("timeseries.csv"))?;
        write_time_series_csv(&evo.reports, &evo.energy, std::io::BufWriter::new(csv))
            .map_err(|e| Failure::new(exit::FAILURE, e.to_string()))?;

        let (r0, r1) = (
            evo.reports[0],
            *evo.reports.last().expect("at least one report"),
        );
        let max_full = evo
            .reports
            .iter()
            .map(|r| r.full_constraint_residual)
            .fold(0.0, f64::max);
        let curl = |r: &kdp::ConstraintReport<f64>| {
            r.curl_a_residual
                .map(|v| format!("{v:e}"))
                .unwrap_or_else(|| "untracked".into())
        };
        writeln!(out, "steps = {}", cfg.steps)?;
        writeln!(out, "final_time = {}", evo.grid.time)?;
        writeln!(out, "courant = {}", ecfg.courant(cfg.dx))?;
        writeln!(
            out,
            "total_energy_initial = {:e}",
            evo.energy[0].total_energy
        )?;
        writeln!(
            out,
            "total_energy_final = {:e}",
            evo.energy.last().unwrap().total_energy
        )?;
        writeln!(out, "energy_drift = {:e}", evo.relative_energy_drift())?;
        writeln!(
            out,
            "div_E_residual = {:e} -> {:e}",
            r0.div_e_residual, r1.div_e_residual
        )?;
        writeln!(out, "curl_A_residual = {} -> {}", curl(&r0), curl(&r1))?;
        writeln!(
            out,
            "full_constraint_residual = {:e} -> {:e} (max {:e})",
            r0.full_constraint_residual, r1.full_constraint_residual, max_full
        )?;
        writeln!(out, "output_dir = {}", dir.display())?;
        Ok(exit::OK)
    })();
    finish(result, err)
}

pub fn cmd_transform(args: &TransformArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<i32, Failure> {
        let rep = standard_rep()?;
        let (elem, what) = match (args.rotate, args.angle, args.boost, args.rapidity) {
            (Some(axis), Some(angle), None, _) => (
                rotation(&rep, axis, angle.radians()),
                vec![
                    ("rotate".to_string(), format!("{axis:?}")),
                    ("angle".into(), angle.to_string()),
                ],
            ),
            (None, _, Some(dir), Some(chi)) => (
                boost(&rep, dir, chi),
                vec![
                    ("boost".to_string(), format!("{dir:?}")),
                    ("rapidity".into(), chi.to_string()),
                ],
            ),
            _ => {
                return Err(Failure::new(
                    exit::USAGE,
                    "give either --rotate AXIS --angle A or --boost DIR --rapidity R",
                ))
            }
        };
        let grid: FieldGrid64 = load_snapshot(&args.input).map_err(input_failure(&args.input))?;
        let manifest = RunManifest::new(CommandKind::Transform, 0, what)
            .with_config(&args.input, &std::fs::read(&args.input)?)
            .with_output(&args.output);
        echo_manifest(&manifest, err);
        let moved = elem.apply_to_grid(&grid);
        ensure_parent(&args.output)?;
        save_snapshot(&moved, &args.output)
            .map_err(|e| Failure::new(exit::FAILURE, e.to_string()))?;
        manifest.write_to(&sidecar(&args.output))?;
        writeln!(out, "sites = {}", grid.len())?;
        writeln!(out, "total_energy_before = {:e}", grid.total_energy())?;
        writeln!(out, "total_energy_after = {:e}", moved.total_energy())?;
        writeln!(out, "output = {}", args.output.display())?;
        Ok(exit::OK)
    })();
    finish(result, err)
}

fn write_or_print(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => {
            ensure_parent(p)?;
            std::fs::write(p, text)?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn cmd_bell(args: &BellArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<i32, Failure> {
        let state = TwoBeamState64::entangled();
        let header = "alpha_deg,beta_deg,gamma_deg,lhs,violated\n";
        let row = |s: &BellSettings<f64>, lhs: f64| {
            format!(
                "{},{},{},{},{}\n",
                s.alpha.to_degrees(),
                s.beta.to_degrees(),
                s.gamma_angle.to_degrees(),
                lhs,
                u8::from(violates_bound(lhs))
            )
        };
        let mut margs = Vec::new();
        let text;
        match args.scan {
            Some(n) => {
                margs.push(("scan".to_string(), n.to_string()));
                let manifest = RunManifest::new(CommandKind::Bell, 0, margs);
                echo_manifest(&manifest, err);
                let scan = violation_scan(&state, n)
                    .map_err(|e| Failure::new(exit::USAGE, e.to_string()))?;
                let mut csv = String::with_capacity(header.len() + scan.rows.len() * 40);
                csv.push_str(header);
                for r in &scan.rows {
                    csv.push_str(&row(&r.settings, r.lhs));
                }
                write_or_print(&args.out, &csv, out)?;
                if let Some(p) = &args.out {
                    manifest.with_output(p).write_to(&sidecar(p))?;
                    writeln!(out, "rows = {}", scan.rows.len())?;
                    write!(out, "best = {}", row(&scan.best.settings, scan.best.lhs))?;
                }
                return Ok(exit::OK);
            }
            None => {
                let (a, b, g) = match (args.alpha, args.beta, args.gamma) {
                    (Some(a), Some(b), Some(g)) => (a, b, g),
                    _ => {
                        return Err(Failure::new(
                            exit::USAGE,
                            "need --alpha, --beta and --gamma, or --scan",
                        ))
                    }
                };
                for (k, v) in [("alpha", a), ("beta", b), ("gamma", g)] {
                    margs.push((k.to_string(), v.to_string()));
                }
                let manifest = RunManifest::new(CommandKind::Bell, 0, margs);
                echo_manifest(&manifest, err);
                let s = BellSettings::new(a.radians(), b.radians(), g.radians());
                let c = |x: f64, y: f64| {
                    correlation(&state, x, y).expect("entangled state is normalized")
                };
                let lhs = bell_lhs(&state, &s).expect("entangled state is normalized");
                let mut t = String::new();
                t.push_str(&format!("alpha = {a}\nbeta = {b}\ngamma = {g}\n"));
                t.push_str(&format!("C(alpha,beta) = {}\n", c(s.alpha, s.beta)));
                t.push_str(&format!("C(alpha,gamma) = {}\n", c(s.alpha, s.gamma_angle)));
                t.push_str(&format!("C(beta,gamma) = {}\n", c(s.beta, s.gamma_angle)));
                t.push_str(&format!(
                    "lhs = {lhs}\nbound = 1\nviolated = {}\n",
                    u8::from(violates_bound(lhs))
                ));
                out.write_all(t.as_bytes())?;
                if let Some(p) = &args.out {
                    text = format!("{header}{}", row(&s, lhs));
                    write_or_print(&args.out, &text, out)?;
                    manifest.with_output(p).write_to(&sidecar(p))?;
                }
            }
        }
        Ok(exit::OK)
    })();
    finish(result, err)
}

pub fn cmd_observables(args: &ObservablesArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<i32, Failure> {
        if !(args.c > 0.0) {
            return Err(Failure::new(exit::USAGE, "c must be positive"));
        }
        let grid: FieldGrid64 =
            load_snapshot(&args.snapshot).map_err(input_failure(&args.snapshot))?;
        let mut manifest = RunManifest::new(
            CommandKind::Observables,
            0,
            vec![("c".into(), args.c.to_string())],
        )
        .with_config(&args.snapshot, &std::fs::read(&args.snapshot)?);
        if let Some(p) = &args.out {
            manifest = manifest.with_output(p);
        }
        echo_manifest(&manifest, err);
        let rep = standard_rep()?;
        let mut csv = Vec::new();
        write_observables_csv(&rep, &grid, args.c, &mut csv)
            .map_err(|e| Failure::new(exit::FAILURE, e.to_string()))?;
        write_or_print(&args.out, &String::from_utf8(csv).expect("ascii csv"), out)?;
        if let Some(p) = &args.out {
            manifest.write_to(&sidecar(p))?;
        }
        Ok(exit::OK)
    })();
    finish(result, err)
}
