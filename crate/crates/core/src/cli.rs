//! Batch command-line front end. The binary only parses arguments and calls
//! [`run`]; every command is also callable as a function.
//!
//! Exit codes: 0 when every check passes, 1 when a numerical check fails (or
//! a solver gives up), 2 for usage and I/O errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytic::{ball_data, MAX_BALL_DIMENSION};
use crate::bounds::{
    aim_grid, empirical_aim_constant, torsion_constant, verification_suite, GaussianBoundParams, SuiteOptions,
    TorsionProofConstants, Verdict,
};
use crate::domain::Domain;
use crate::error::Error;
use crate::grid::discretize;
use crate::mc::mc_exit_time;
use crate::potential::Potential;
use crate::semigroup::growth_vs_bound;
use crate::spectral::{build_operator, ground_state_energy, q_ratio_with_order, solve_torsion, QReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "torsion", version, about = "Torsion functions, Dirichlet ground states and semigroup bound checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of q_d and C_d for unit balls.
    BallTable {
        #[arg(long, default_value_t = 5)]
        dmax: usize,
    },
    /// q = E_0 * |u|_inf of a domain, checked against 1 <= q <= C_d.
    Q {
        /// Domain JSON file.
        #[arg(long)]
        domain: PathBuf,
        /// Finest grid spacing; defaults to the domain size over 64.
        #[arg(long)]
        h: Option<f64>,
        /// Potential JSON file.
        #[arg(long)]
        potential: Option<PathBuf>,
        /// Richardson order.
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
    /// Sweep every scalar inequality and report one verdict each.
    BoundsVerify {
        /// Growth constant used in the aim envelope (exploratory).
        #[arg(long, default_value_t = 5.56)]
        aim_constant: f64,
    },
    /// Evolve the constant function and compare with the growth bound.
    Semigroup {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        potential: Option<PathBuf>,
        /// Time horizon; defaults to 8 / E_0.
        #[arg(long = "T")]
        t_end: Option<f64>,
        /// Grid spacing; defaults to the domain size over 64.
        #[arg(long)]
        h: Option<f64>,
    },
    /// Monte Carlo estimate of the expected exit time.
    McExit {
        #[arg(long)]
        domain: PathBuf,
        /// Start point, comma separated; defaults to the bounding-box center.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
    },
    /// Constants and auxiliary inequalities of the growth and torsion estimates.
    ProofChecks,
}

/// Text produced by a command and whether all of its checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    pub pass: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Compute(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Compute(e) if is_input_error(e) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

fn is_input_error(e: &Error) -> bool {
    match e {
        Error::InvalidDomain(_)
        | Error::InvalidArgument(_)
        | Error::DimensionMismatch { .. }
        | Error::OutOfRange(_)
        | Error::EmptyInterior { .. }
        | Error::NegativePotential { .. }
        | Error::UnderResolved(_) => true,
        Error::Context { source, .. } => is_input_error(source),
        _ => false,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_domain(path: &Path) -> Result<Domain, CliError> {
    Domain::from_json(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_potential(path: Option<&PathBuf>) -> Result<Option<Potential>, CliError> {
    path.map(|p| Potential::from_json(&read(p)?).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))))
        .transpose()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Fixed 4-decimal formatting; ties of the binary value round to even.
pub fn fmt4(x: f64) -> String {
    format!("{x:.4}")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallRow {
    pub d: usize,
    pub q: f64,
    pub c: f64,
    /// `C_d / q_d`.
    pub ratio: f64,
}

/// Rows `(d, q_d, C_d, C_d/q_d)` for `d = 1..=d_max`.
pub fn ball_table(d_max: usize) -> Result<Vec<BallRow>, CliError> {
    if d_max == 0 || d_max > MAX_BALL_DIMENSION {
        return Err(CliError::Usage(format!("--dmax must be in 1..={MAX_BALL_DIMENSION}")));
    }
    (1..=d_max)
        .map(|d| {
            let q = ball_data(d)?.q;
            let c = torsion_constant(d);
            Ok(BallRow { d, q, c, ratio: c / q })
        })
        .collect()
}

/// Passes when `d/8 <= q_d <= C_d` on every row and `C_d/q_d <= 1.5` for `d <= 5`.
pub fn cmd_ball_table(d_max: usize, format: Format) -> Result<CommandOutput, CliError> {
    let rows = ball_table(d_max)?;
    let pass = rows
        .iter()
        .all(|r| r.q >= r.d as f64 / 8.0 && r.q <= r.c && (r.d > 5 || r.ratio <= 1.5));
    let text = match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from("d,q_d,C_d,C_d/q_d\n");
            for r in &rows {
                s.push_str(&format!("{},{},{},{}\n", r.d, fmt4(r.q), fmt4(r.c), fmt4(r.ratio)));
            }
            s
        }
    };
    Ok(CommandOutput { text, pass })
}

/// Lower tolerance on `q >= 1`.
pub const Q_LOWER_TOL: f64 = 0.005;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QVerdict {
    #[serde(flatten)]
    pub report: QReport,
    /// `q >= 1 - 0.005`.
    pub pass_lower: bool,
    /// `q <= C_d`.
    pub pass_upper: bool,
    pub pass: bool,
}

pub fn cmd_q(
    domain: &Domain,
    h: Option<f64>,
    potential: Option<&Potential>,
    order: u32,
    format: Format,
) -> Result<CommandOutput, CliError> {
    let h = h.unwrap_or(domain.scale() / 64.0);
    let report = q_ratio_with_order(domain, h, potential, order)?;
    let pass_lower = report.q >= 1.0 - Q_LOWER_TOL;
    let pass_upper = report.q <= report.bound_cd;
    let pass = pass_lower && pass_upper;
    let text = match format {
        Format::Json => to_json(&QVerdict { report, pass_lower, pass_upper, pass }),
        Format::Csv => format!("{},pass\n{},{}\n", QReport::CSV_HEADER, report.csv_row(), pass),
    };
    Ok(CommandOutput { text, pass })
}

fn verdict_text(verdicts: &[Verdict], format: Format) -> String {
    match format {
        Format::Json => to_json(&verdicts),
        Format::Csv => {
            let mut s = String::from("name,grid,worst_residual,pass\n");
            for v in verdicts {
                s.push_str(&format!("{},\"{}\",{:e},{}\n", v.name, v.grid.replace('"', "'"), v.worst_residual, v.pass));
            }
            s
        }
    }
}

pub fn cmd_bounds_verify(aim_constant: f64, format: Format) -> Result<CommandOutput, CliError> {
    if !(aim_constant > 0.0) {
        return Err(CliError::Usage("--aim-constant must be positive".into()));
    }
    let verdicts = verification_suite(&SuiteOptions { aim_constant })?;
    let pass = verdicts.iter().all(|v| v.pass);
    Ok(CommandOutput { text: verdict_text(&verdicts, format), pass })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct SemigroupSummary {
    e0: f64,
    t_end: f64,
    h: f64,
    final_scaled: f64,
    worst_margin: f64,
    worst_time: f64,
    pass: bool,
}

/// CSV `t,sup_norm,scaled,bound`, or JSON with a summary and the curve. In
/// CSV mode the summary goes to the returned `summary` line.
pub fn cmd_semigroup(
    domain: &Domain,
    potential: Option<&Potential>,
    t_end: Option<f64>,
    h: Option<f64>,
    format: Format,
) -> Result<(CommandOutput, String), CliError> {
    let h = h.unwrap_or(domain.scale() / 64.0);
    let grid = discretize(domain, h)?;
    let v = potential.map(|p| p.sample(&grid)).transpose()?;
    let t_end = match t_end {
        Some(t) if t > 0.0 => t,
        Some(t) => return Err(CliError::Usage(format!("--T must be positive, got {t}"))),
        None => 8.0 / ground_state_energy(&build_operator(&grid, v.as_ref())?)?,
    };
    let report = growth_vs_bound(&grid, v.as_ref(), &GaussianBoundParams::free_heat(domain.dim()), t_end)?;
    let summary = SemigroupSummary {
        e0: report.curve.e0,
        t_end,
        h,
        final_scaled: *report.curve.scaled.last().expect("nonempty curve"),
        worst_margin: report.worst_margin,
        worst_time: report.worst_time,
        pass: report.pass,
    };
    let summary_line = serde_json::to_string(&summary).expect("serializable");
    let text = match format {
        Format::Csv => report.csv(),
        Format::Json => {
            #[derive(Serialize)]
            struct Full<'a> {
                summary: &'a SemigroupSummary,
                times: &'a [f64],
                sup_norm: &'a [f64],
                scaled: &'a [f64],
                bound: &'a [f64],
            }
            to_json(&Full {
                summary: &summary,
                times: &report.curve.times,
                sup_norm: &report.curve.sup_norm,
                scaled: &report.curve.scaled,
                bound: &report.bound,
            })
        }
    };
    Ok((CommandOutput { text, pass: report.pass }, summary_line))
}

fn parse_point(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("--x0 component {p:?}: {e}"))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct McSummary {
    #[serde(flatten)]
    estimate: crate::mc::ExitEstimate,
    /// Finite-difference torsion value at `x0`, when computed.
    pde_value: Option<f64>,
    /// `|mean - pde| / stderr`.
    z_score: Option<f64>,
    pass: bool,
}

/// Exit-time estimate compared with the finite-difference torsion function
/// at `x0` for `d <= 3`; passes when they agree within 3 standard errors.
pub fn cmd_mc_exit(
    domain: &Domain,
    x0: Option<&str>,
    n: usize,
    seed: u64,
    dt: f64,
    format: Format,
) -> Result<CommandOutput, CliError> {
    let x0 = match x0 {
        Some(s) => parse_point(s)?,
        None => {
            let (lo, hi) = domain.bounding_box();
            lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect()
        }
    };
    let estimate = mc_exit_time(domain, &x0, n, dt, seed)?;
    let pde_value = if domain.dim() <= 3 {
        let h = domain.scale() / if domain.dim() == 3 { 48.0 } else { 128.0 };
        let u = solve_torsion(&discretize(domain, h)?, None)?;
        Some(u.interpolate(&x0))
    } else {
        None
    };
    let z_score = pde_value.map(|u| (estimate.mean_exit - u).abs() / estimate.stderr);
    let pass = z_score.map_or(true, |z| z <= 3.0);
    let text = match format {
        Format::Json => to_json(&McSummary { estimate, pde_value, z_score, pass }),
        Format::Csv => format!(
            "mean_exit,stderr,n_paths,dt,seed,pde_value,pass\n{},{},{},{},{},{},{}\n",
            estimate.mean_exit,
            estimate.stderr,
            estimate.n_paths,
            estimate.dt,
            estimate.seed,
            pde_value.map_or(String::new(), |v| v.to_string()),
            pass
        ),
    };
    Ok(CommandOutput { text, pass })
}

const PROOF_CHECK_NAMES: &[&str] = &[
    "case1_slope",
    "case2_slope",
    "proof_constants",
    "aim_envelope",
    "q_upper_below_cd",
    "torsion_f_nonnegative",
    "torsion_f_derivative",
    "torsion_g_identity",
    "torsion_support",
];

/// Proof constants, the subset of verdicts tied to them, and the smallest
/// growth constant the case-split choice of `eps` admits (exploratory).
pub fn cmd_proof_checks(format: Format) -> Result<CommandOutput, CliError> {
    let k = TorsionProofConstants::get();
    let verdicts: Vec<Verdict> = verification_suite(&SuiteOptions::default())?
        .into_iter()
        .filter(|v| PROOF_CHECK_NAMES.contains(&v.name.as_str()))
        .collect();
    let pass = verdicts.iter().all(|v| v.pass);
    let exploratory = empirical_aim_constant(&aim_grid());
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                constants: TorsionProofConstants,
                case1_slope: f64,
                case2_slope: f64,
                exploratory_min_growth_constant: f64,
                verdicts: &'a [Verdict],
            }
            to_json(&Out {
                constants: k,
                case1_slope: ((4.0 * k.alpha0).exp() - 1.0) / k.alpha0,
                case2_slope: 1.0 / (k.tau * k.alpha0),
                exploratory_min_growth_constant: exploratory,
                verdicts: &verdicts,
            })
        }
        Format::Csv => verdict_text(&verdicts, Format::Csv),
    };
    Ok(CommandOutput { text, pass })
}

/// Runs a parsed command. Returns the main output, an optional summary line
/// for stderr, and whether all checks passed.
pub fn execute(cli: &Cli) -> Result<(CommandOutput, Option<String>), CliError> {
    let fmt = |default| cli.format.unwrap_or(default);
    Ok(match &cli.command {
        Command::BallTable { dmax } => (cmd_ball_table(*dmax, fmt(Format::Csv))?, None),
        Command::Q { domain, h, potential, order } => {
            let d = load_domain(domain)?;
            let p = load_potential(potential.as_ref())?;
            (cmd_q(&d, *h, p.as_ref(), *order, fmt(Format::Json))?, None)
        }
        Command::BoundsVerify { aim_constant } => (cmd_bounds_verify(*aim_constant, fmt(Format::Json))?, None),
        Command::Semigroup { domain, potential, t_end, h } => {
            let d = load_domain(domain)?;
            let p = load_potential(potential.as_ref())?;
            let (out, summary) = cmd_semigroup(&d, p.as_ref(), *t_end, *h, fmt(Format::Csv))?;
            (out, Some(summary))
        }
        Command::McExit { domain, x0, n, seed, dt } => {
            let d = load_domain(domain)?;
            (cmd_mc_exit(&d, x0.as_deref(), *n, *seed, *dt, fmt(Format::Json))?, None)
        }
        Command::ProofChecks => (cmd_proof_checks(fmt(Format::Json))?, None),
    })
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok((out, summary)) => {
            if let Some(s) = summary {
                let _ = writeln!(stderr, "{s}");
            }
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text).map_err(|source| CliError::Io { path: path.clone(), source }),
                None => stdout.write_all(out.text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if out.pass {
                0
            } else {
                let _ = writeln!(stderr, "numerical check failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
