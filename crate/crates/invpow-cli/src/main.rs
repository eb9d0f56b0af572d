//! `invpow` — exact ground states of the inverse-power potential
//! `V(r) = A/r^4 + B/r^3 + C/r^2 + D/r` in two and three dimensions.

mod config;
mod render;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use invpow::special::bessel_k;
use invpow::{
    solve_b, verify, BracketOptions, Channel, ClosedFormSolution, Potential, RadialGrid,
    VerifyOptions,
};

use config::Settings;
use render::{fmt_sci, Cell, Format, RecordSet};

/// Exact ground states of the potential A/r^4 + B/r^3 + C/r^2 + D/r.
#[derive(Parser)]
#[command(name = "invpow", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the closed-form ground state for one potential
    Solve(SolveArgs),
    /// Re-derive the ground state numerically and check it
    Verify(VerifyArgs),
    /// Probe the one-node extension of the ansatz for consistency
    Audit(AuditArgs),
    /// Sweep one parameter, re-deriving B for every row
    Scan(ScanArgs),
    /// Tabulate the radial wavefunction on an even grid
    Sample(SampleArgs),
    /// Evaluate the modified Bessel function K_nu(x)
    Bessel(BesselArgs),
}

#[derive(Args)]
struct CouplingArgs {
    /// Inverse-quartic coupling A (must be positive)
    #[arg(long = "A", value_name = "NUM", allow_negative_numbers = true)]
    a4: Option<f64>,
    /// Inverse-cubic coupling B; derived from A, C, D when omitted
    #[arg(long = "B", value_name = "NUM", allow_negative_numbers = true)]
    a3: Option<f64>,
    /// Inverse-square coupling C
    #[arg(long = "C", value_name = "NUM", allow_negative_numbers = true)]
    a2: Option<f64>,
    /// Inverse-linear coupling D (must be negative)
    #[arg(long = "D", value_name = "NUM", allow_negative_numbers = true)]
    a1: Option<f64>,
}

#[derive(Args)]
struct ChannelArgs {
    /// Spatial dimension, 2 or 3 (default 3)
    #[arg(long, value_name = "DIM")]
    dim: Option<u32>,
    /// Orbital quantum number l, three dimensions only (default 0)
    #[arg(long, value_name = "L")]
    ell: Option<u32>,
    /// Angular quantum number m, two dimensions only (default 0)
    #[arg(long, value_name = "M")]
    m: Option<u32>,
}

#[derive(Args)]
struct BracketArgs {
    /// Lower edge of the search window for the derived coupling B
    #[arg(long, value_name = "NUM", allow_negative_numbers = true)]
    bracket_lo: Option<f64>,
    /// Upper edge of the search window for the derived coupling B
    #[arg(long, value_name = "NUM", allow_negative_numbers = true)]
    bracket_hi: Option<f64>,
    /// Number of scan panels inside the search window
    #[arg(long, value_name = "N")]
    bracket_panels: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, value_name = "FMT")]
    format: Option<Format>,
    /// Write the report to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Configuration file of key = value defaults
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    couplings: CouplingArgs,
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    bracket: BracketArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    couplings: CouplingArgs,
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    bracket: BracketArgs,
    /// Innermost radius of the integration grid
    #[arg(long, value_name = "NUM")]
    r_min: Option<f64>,
    /// Outermost radius of the integration grid
    #[arg(long, value_name = "NUM")]
    r_max: Option<f64>,
    /// Step of the integration grid
    #[arg(long, value_name = "NUM")]
    r_step: Option<f64>,
    /// Lower edge of the shooting energy bracket
    #[arg(long, value_name = "NUM", allow_negative_numbers = true)]
    energy_lo: Option<f64>,
    /// Upper edge of the shooting energy bracket
    #[arg(long, value_name = "NUM", allow_negative_numbers = true)]
    energy_hi: Option<f64>,
    /// Largest acceptable scaled equation residual
    #[arg(long, value_name = "NUM")]
    residual_tol: Option<f64>,
    /// Largest acceptable relative energy disagreement
    #[arg(long, value_name = "NUM")]
    energy_rel_tol: Option<f64>,
    /// Largest acceptable deviation of the density integral from one
    #[arg(long, value_name = "NUM")]
    norm_tol: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    couplings: CouplingArgs,
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    bracket: BracketArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanParam {
    /// Inverse-quartic coupling
    #[value(name = "A")]
    Quartic,
    /// Inverse-square coupling
    #[value(name = "C")]
    Quadratic,
    /// Inverse-linear coupling
    #[value(name = "D")]
    Linear,
    /// Angular quantum number (l or m)
    #[value(name = "angular")]
    Angular,
}

impl ScanParam {
    fn column(self) -> &'static str {
        match self {
            ScanParam::Quartic => "A",
            ScanParam::Quadratic => "C",
            ScanParam::Linear => "D",
            ScanParam::Angular => "angular",
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    couplings: CouplingArgs,
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    bracket: BracketArgs,
    /// Parameter swept across rows
    #[arg(long, value_enum, value_name = "PARAM")]
    vary: Option<ScanParam>,
    /// First value of the sweep
    #[arg(long, value_name = "NUM", allow_negative_numbers = true)]
    lo: Option<f64>,
    /// Last value of the sweep
    #[arg(long, value_name = "NUM", allow_negative_numbers = true)]
    hi: Option<f64>,
    /// Number of rows (default 11)
    #[arg(long, value_name = "N")]
    steps: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    couplings: CouplingArgs,
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    bracket: BracketArgs,
    /// First sampled radius (default 0.05)
    #[arg(long, value_name = "NUM")]
    r_lo: Option<f64>,
    /// Last sampled radius (default 40)
    #[arg(long, value_name = "NUM")]
    r_hi: Option<f64>,
    /// Number of samples (default 400)
    #[arg(long, value_name = "N")]
    points: Option<usize>,
    /// Scale the profile so its density integrates to one
    #[arg(long)]
    normalized: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BesselArgs {
    /// Order of the Bessel function
    #[arg(long, value_name = "NUM", allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Argument (must be positive)
    #[arg(long, value_name = "NUM")]
    x: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

/// A reportable failure: message for stderr plus a process exit code.
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<invpow::Error> for Failure {
    fn from(err: invpow::Error) -> Self {
        Failure::new(err.to_string())
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::new(message)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                err.exit();
            }
            let rendered = err.to_string();
            let line = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            eprintln!("error: {line}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve(args) => run_solve(args),
        Command::Verify(args) => run_verify(args),
        Command::Audit(args) => run_audit(args),
        Command::Scan(args) => run_scan(args),
        Command::Sample(args) => run_sample(args),
        Command::Bessel(args) => run_bessel(args),
    }
}

// ---------------------------------------------------------------------------
// Option resolution: command-line flag, then config file, then default.

fn pick<T>(flag: Option<T>, file: Result<Option<T>, String>) -> Result<Option<T>, Failure> {
    Ok(flag.or(file?))
}

fn cfg_f64(settings: Option<&Settings>, key: &str) -> Result<Option<f64>, String> {
    settings.map_or(Ok(None), |s| s.f64(key))
}

fn cfg_u32(settings: Option<&Settings>, key: &str) -> Result<Option<u32>, String> {
    settings.map_or(Ok(None), |s| s.u32(key))
}

fn cfg_usize(settings: Option<&Settings>, key: &str) -> Result<Option<usize>, String> {
    settings.map_or(Ok(None), |s| s.usize(key))
}

fn require(value: Option<f64>, name: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| {
        Failure::new(format!(
            "missing coupling {name}: pass --{name} or set `{name}` in a config file"
        ))
    })
}

fn resolve_channel(args: &ChannelArgs, settings: Option<&Settings>) -> Result<Channel, Failure> {
    let dim = pick(args.dim, cfg_u32(settings, "dim"))?.unwrap_or(3);
    let ell = pick(args.ell, cfg_u32(settings, "ell"))?;
    let m = pick(args.m, cfg_u32(settings, "m"))?;
    match dim {
        3 => {
            if m.is_some() {
                return Err(Failure::new(
                    "--m applies to --dim 2 only; use --ell in three dimensions",
                ));
            }
            Ok(Channel::three_dim(ell.unwrap_or(0)))
        }
        2 => {
            if ell.is_some() {
                return Err(Failure::new(
                    "--ell applies to --dim 3 only; use --m in two dimensions",
                ));
            }
            Ok(Channel::two_dim(m.unwrap_or(0)))
        }
        other => Err(Failure::new(format!("--dim must be 2 or 3, got {other}"))),
    }
}

fn resolve_bracket(
    args: &BracketArgs,
    settings: Option<&Settings>,
) -> Result<BracketOptions, Failure> {
    let mut options = BracketOptions::default();
    options.lo = pick(args.bracket_lo, cfg_f64(settings, "bracket_lo"))?.or(options.lo);
    if let Some(hi) = pick(args.bracket_hi, cfg_f64(settings, "bracket_hi"))? {
        options.hi = hi;
    }
    if let Some(panels) = pick(args.bracket_panels, cfg_usize(settings, "bracket_panels"))? {
        options.panels = panels;
    }
    Ok(options)
}

fn resolve_format(
    flag: Option<Format>,
    settings: Option<&Settings>,
    default: Format,
) -> Result<Format, Failure> {
    let file = settings.map_or(Ok(None), |s| s.format("format"));
    Ok(pick(flag, file)?.unwrap_or(default))
}

/// Picks one coupling from the roots of the constraint: the smallest
/// non-negative root when there is one, otherwise the root nearest zero.
fn choose_root(roots: &[f64]) -> f64 {
    roots
        .iter()
        .copied()
        .find(|b| *b >= 0.0)
        .unwrap_or_else(|| *roots.last().expect("root list is never empty"))
}

/// Builds the potential, deriving B from the solvability constraint when it
/// was not supplied. Returns the potential and whether B was derived.
fn resolve_potential(
    couplings: &CouplingArgs,
    channel: Channel,
    bracket: &BracketOptions,
    settings: Option<&Settings>,
) -> Result<(Potential, bool), Failure> {
    let a4 = require(pick(couplings.a4, cfg_f64(settings, "A"))?, "A")?;
    let a2 = require(pick(couplings.a2, cfg_f64(settings, "C"))?, "C")?;
    let a1 = require(pick(couplings.a1, cfg_f64(settings, "D"))?, "D")?;
    match pick(couplings.a3, cfg_f64(settings, "B"))? {
        Some(a3) => Ok((Potential::new(a4, a3, a2, a1)?, false)),
        None => {
            let roots = solve_b(a4, a2, a1, channel, bracket)?;
            let chosen = choose_root(&roots);
            if roots.len() > 1 {
                let listed: Vec<String> = roots.iter().map(|r| fmt_sci(*r, 9)).collect();
                eprintln!(
                    "note: {} couplings B satisfy the constraint ({}); using the smallest non-negative one",
                    roots.len(),
                    listed.join(", "),
                );
            }
            Ok((Potential::new(a4, chosen, a2, a1)?, true))
        }
    }
}

fn emit(records: &RecordSet, format: Format, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        None => {
            let stdout = io::stdout();
            match records.render(format, &mut stdout.lock()) {
                // A closed downstream pipe (e.g. `invpow sample | head`) is
                // not an error worth reporting.
                Err(err) if err.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                result => result.map_err(|err| Failure::new(format!("cannot write output: {err}"))),
            }
        }
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|err| Failure::new(format!("cannot create {}: {err}", path.display())))?;
            records
                .render(format, &mut file)
                .and_then(|()| file.flush())
                .map_err(|err| Failure::new(format!("cannot write {}: {err}", path.display())))
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands.

fn solution_row(
    potential: &Potential,
    solution: &ClosedFormSolution,
) -> Result<Vec<Cell>, Failure> {
    let params = solution.params();
    Ok(vec![
        Cell::Float(potential.a3()),
        Cell::Float(params.a()),
        Cell::Float(params.b()),
        Cell::Float(params.c()),
        Cell::Float(solution.energy()),
        Cell::Float(solution.normalization()),
        Cell::Float(params.peak_radius()?),
    ])
}

fn run_solve(args: SolveArgs) -> Result<u8, Failure> {
    let settings = config::load(args.output.config.as_deref())?;
    let settings = settings.as_ref();
    let channel = resolve_channel(&args.channel, settings)?;
    let bracket = resolve_bracket(&args.bracket, settings)?;
    let (potential, _) = resolve_potential(&args.couplings, channel, &bracket, settings)?;
    let solution = ClosedFormSolution::solve(potential, channel)?;
    let records = RecordSet {
        columns: vec!["B", "a", "b", "c", "E", "N", "r_peak"],
        rows: vec![solution_row(&potential, &solution)?],
    };
    let format = resolve_format(args.output.format, settings, Format::Table)?;
    emit(&records, format, args.output.output.as_deref())?;
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let settings = config::load(args.output.config.as_deref())?;
    let settings = settings.as_ref();
    let channel = resolve_channel(&args.channel, settings)?;
    let bracket = resolve_bracket(&args.bracket, settings)?;
    let (potential, _) = resolve_potential(&args.couplings, channel, &bracket, settings)?;

    let mut options = VerifyOptions::default();
    let defaults = options.grid;
    let r_min = pick(args.r_min, cfg_f64(settings, "r_min"))?.unwrap_or(defaults.r_min());
    let r_max = pick(args.r_max, cfg_f64(settings, "r_max"))?.unwrap_or(defaults.r_max());
    let r_step = pick(args.r_step, cfg_f64(settings, "r_step"))?.unwrap_or(defaults.step());
    options.grid = RadialGrid::new(r_min, r_max, r_step)?;
    let energy_lo = pick(args.energy_lo, cfg_f64(settings, "energy_lo"))?;
    let energy_hi = pick(args.energy_hi, cfg_f64(settings, "energy_hi"))?;
    options.bracket = match (energy_lo, energy_hi) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        (None, None) => None,
        _ => {
            return Err(Failure::new(
                "provide both --energy-lo and --energy-hi, or neither",
            ))
        }
    };
    if let Some(tol) = pick(args.residual_tol, cfg_f64(settings, "residual_tol"))? {
        options.tolerances.residual = tol;
    }
    if let Some(tol) = pick(args.energy_rel_tol, cfg_f64(settings, "energy_rel_tol"))? {
        options.tolerances.energy_rel = tol;
    }
    if let Some(tol) = pick(args.norm_tol, cfg_f64(settings, "norm_tol"))? {
        options.tolerances.normalization = tol;
    }

    let report = verify(potential, channel, &options)?;
    let optional = |value: Option<f64>| value.map_or(Cell::Empty, Cell::Float);
    let records = RecordSet {
        columns: vec![
            "passed",
            "analytic_energy",
            "shot_energy",
            "energy_rel_err",
            "residual_max",
            "normalization_integral",
            "r_min",
            "r_max",
            "r_step",
            "notes",
        ],
        rows: vec![vec![
            Cell::Flag(report.passed),
            Cell::Float(report.analytic_energy),
            optional(report.shot_energy),
            optional(report.energy_rel_err),
            Cell::Float(report.residual_max),
            optional(report.normalization_integral),
            Cell::Float(report.grid.r_min()),
            Cell::Float(report.grid.r_max()),
            Cell::Float(report.grid.step()),
            if report.notes.is_empty() {
                Cell::Empty
            } else {
                Cell::Text(report.notes.join("; "))
            },
        ]],
    };
    let format = resolve_format(args.output.format, settings, Format::Table)?;
    emit(&records, format, args.output.output.as_deref())?;
    if report.passed {
        Ok(0)
    } else {
        eprintln!("error: verification failed: {}", report.notes.join("; "));
        Ok(1)
    }
}

fn run_audit(args: AuditArgs) -> Result<u8, Failure> {
    let settings = config::load(args.output.config.as_deref())?;
    let settings = settings.as_ref();
    let channel = resolve_channel(&args.channel, settings)?;
    let bracket = resolve_bracket(&args.bracket, settings)?;
    let (potential, _) = resolve_potential(&args.couplings, channel, &bracket, settings)?;
    let report = invpow::audit(&potential, channel)?;
    let records = RecordSet {
        columns: vec![
            "B",
            "ground_b",
            "excited_b",
            "coupling_conflict",
            "coupling_ratio",
            "residual_floor",
            "branch_minus_energy",
            "branch_plus_energy",
            "minus_branch_is_ground",
        ],
        rows: vec![vec![
            Cell::Float(potential.a3()),
            Cell::Float(report.ground_b),
            Cell::Float(report.excited_b),
            Cell::Flag(report.linear_coupling_conflict),
            Cell::Float(report.coupling_ratio),
            Cell::Float(report.residual_floor),
            Cell::Float(report.branch_minus_energy),
            Cell::Float(report.branch_plus_energy),
            Cell::Flag(report.minus_branch_is_ground),
        ]],
    };
    let format = resolve_format(args.output.format, settings, Format::Table)?;
    emit(&records, format, args.output.output.as_deref())?;
    if report.linear_coupling_conflict && report.minus_branch_is_ground {
        Ok(0)
    } else {
        eprintln!(
            "error: audit did not confirm the expected pattern \
             (coupling conflict and a matching minus branch)"
        );
        Ok(1)
    }
}

fn run_scan(args: ScanArgs) -> Result<u8, Failure> {
    let settings = config::load(args.output.config.as_deref())?;
    let settings = settings.as_ref();
    if args.couplings.a3.is_some() {
        return Err(Failure::new(
            "scan derives B from the constraint for every row; drop --B",
        ));
    }
    let vary_file = match settings.and_then(|s| s.text("vary")) {
        Some(text) => Some(ScanParam::from_str(text, false).map_err(|_| {
            Failure::new(format!(
                "config key `vary` expects A, C, D, or angular, got `{text}`"
            ))
        })?),
        None => None,
    };
    let vary = args
        .vary
        .or(vary_file)
        .ok_or_else(|| Failure::new("missing --vary: choose A, C, D, or angular"))?;
    let lo = pick(args.lo, cfg_f64(settings, "lo"))?
        .ok_or_else(|| Failure::new("missing --lo: first value of the sweep"))?;
    let hi = pick(args.hi, cfg_f64(settings, "hi"))?
        .ok_or_else(|| Failure::new("missing --hi: last value of the sweep"))?;
    let steps = pick(args.steps, cfg_usize(settings, "steps"))?.unwrap_or(11);
    if steps == 0 || steps > 1_000_000 {
        return Err(Failure::new(format!(
            "--steps must be between 1 and 1000000, got {steps}"
        )));
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Failure::new("--lo and --hi must be finite"));
    }

    let channel = resolve_channel(&args.channel, settings)?;
    let bracket = resolve_bracket(&args.bracket, settings)?;
    let base_a4 = pick(args.couplings.a4, cfg_f64(settings, "A"))?;
    let base_a2 = pick(args.couplings.a2, cfg_f64(settings, "C"))?;
    let base_a1 = pick(args.couplings.a1, cfg_f64(settings, "D"))?;
    let a4 = match vary {
        ScanParam::Quartic => f64::NAN,
        _ => require(base_a4, "A")?,
    };
    let a2 = match vary {
        ScanParam::Quadratic => f64::NAN,
        _ => require(base_a2, "C")?,
    };
    let a1 = match vary {
        ScanParam::Linear => f64::NAN,
        _ => require(base_a1, "D")?,
    };

    let mut rows = Vec::with_capacity(steps);
    for index in 0..steps {
        let value = if steps == 1 {
            lo
        } else {
            lo + index as f64 * (hi - lo) / (steps - 1) as f64
        };
        let row = match scan_row(vary, value, a4, a2, a1, channel, &bracket) {
            Ok(cells) => cells,
            Err(message) => {
                let mut cells = vec![Cell::Float(value)];
                cells.extend(std::iter::repeat(Cell::Empty).take(7));
                cells.push(Cell::Text(message));
                cells
            }
        };
        rows.push(row);
    }
    let records = RecordSet {
        columns: vec![
            vary.column(),
            "B",
            "a",
            "b",
            "c",
            "E",
            "N",
            "r_peak",
            "error",
        ],
        rows,
    };
    let format = resolve_format(args.output.format, settings, Format::Table)?;
    emit(&records, format, args.output.output.as_deref())?;
    Ok(0)
}

/// One scan row: substitute the swept value, re-derive B, and solve.
/// Failures are returned as messages so the sweep can continue.
fn scan_row(
    vary: ScanParam,
    value: f64,
    a4: f64,
    a2: f64,
    a1: f64,
    channel: Channel,
    bracket: &BracketOptions,
) -> Result<Vec<Cell>, String> {
    let (a4, a2, a1, channel) = match vary {
        ScanParam::Quartic => (value, a2, a1, channel),
        ScanParam::Quadratic => (a4, value, a1, channel),
        ScanParam::Linear => (a4, a2, value, channel),
        ScanParam::Angular => {
            let rounded = value.round();
            if !(0.0..=1e6).contains(&rounded) || (value - rounded).abs() > 1e-9 {
                return Err(format!(
                    "angular values must be small non-negative integers; got {value}"
                ));
            }
            let n = rounded as u32;
            let channel = match channel.dimension() {
                3 => Channel::three_dim(n),
                _ => Channel::two_dim(n),
            };
            (a4, a2, a1, channel)
        }
    };
    let fail = |err: invpow::Error| err.to_string();
    let roots = solve_b(a4, a2, a1, channel, bracket).map_err(fail)?;
    let potential = Potential::new(a4, choose_root(&roots), a2, a1).map_err(fail)?;
    let solution = ClosedFormSolution::solve(potential, channel).map_err(fail)?;
    let params = solution.params();
    Ok(vec![
        Cell::Float(value),
        Cell::Float(potential.a3()),
        Cell::Float(params.a()),
        Cell::Float(params.b()),
        Cell::Float(params.c()),
        Cell::Float(solution.energy()),
        Cell::Float(solution.normalization()),
        Cell::Float(params.peak_radius().map_err(fail)?),
        Cell::Empty,
    ])
}

fn run_sample(args: SampleArgs) -> Result<u8, Failure> {
    let settings = config::load(args.output.config.as_deref())?;
    let settings = settings.as_ref();
    let channel = resolve_channel(&args.channel, settings)?;
    let bracket = resolve_bracket(&args.bracket, settings)?;
    let (potential, _) = resolve_potential(&args.couplings, channel, &bracket, settings)?;
    let solution = ClosedFormSolution::solve(potential, channel)?;

    let r_lo = pick(args.r_lo, cfg_f64(settings, "r_lo"))?.unwrap_or(0.05);
    let r_hi = pick(args.r_hi, cfg_f64(settings, "r_hi"))?.unwrap_or(40.0);
    let points = pick(args.points, cfg_usize(settings, "points"))?.unwrap_or(400);
    let normalized = args.normalized
        || settings
            .map_or(Ok(None), |s| s.bool("normalized"))?
            .unwrap_or(false);
    if !(r_lo.is_finite() && r_hi.is_finite()) || r_lo <= 0.0 {
        return Err(Failure::new(format!(
            "sampling radii must be positive and finite, got [{r_lo}, {r_hi}]"
        )));
    }
    if points == 0 || points > 10_000_000 {
        return Err(Failure::new(format!(
            "--points must be between 1 and 10000000, got {points}"
        )));
    }
    if points > 1 && r_hi <= r_lo {
        return Err(Failure::new(format!(
            "--r-hi must exceed --r-lo for a multi-point sweep, got [{r_lo}, {r_hi}]"
        )));
    }

    let mut rows = Vec::with_capacity(points);
    for index in 0..points {
        let r = if points == 1 {
            r_lo
        } else {
            r_lo + index as f64 * (r_hi - r_lo) / (points - 1) as f64
        };
        let value = solution.radial_wavefunction(r, normalized)?;
        rows.push(vec![Cell::Float(r), Cell::Float(value)]);
    }
    let records = RecordSet {
        columns: vec!["r", "R"],
        rows,
    };
    let format = resolve_format(args.output.format, settings, Format::Csv)?;
    emit(&records, format, args.output.output.as_deref())?;
    Ok(0)
}

fn run_bessel(args: BesselArgs) -> Result<u8, Failure> {
    let settings = config::load(args.output.config.as_deref())?;
    let settings = settings.as_ref();
    let nu = pick(args.nu, cfg_f64(settings, "nu"))?
        .ok_or_else(|| Failure::new("missing --nu: order of the Bessel function"))?;
    let x = pick(args.x, cfg_f64(settings, "x"))?
        .ok_or_else(|| Failure::new("missing --x: argument of the Bessel function"))?;
    let value = bessel_k(nu, x)?;
    let records = RecordSet {
        columns: vec!["nu", "x", "K"],
        rows: vec![vec![Cell::Float(nu), Cell::Float(x), Cell::Float(value)]],
    };
    let format = resolve_format(args.output.format, settings, Format::Table)?;
    emit(&records, format, args.output.output.as_deref())?;
    Ok(0)
}
