//! Command-line front end: point queries and CSV sweeps.
//!
//! Every command produces a complete CSV document (header plus rows, LF line
//! endings). Rows are computed in parallel and emitted in sweep order, so
//! output is byte-identical across runs and thread counts.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::angular::j_min;
use crate::entanglement::{ef, ef_eigenstate, qudit_distribution};
use crate::numerics::HalfInt;
use crate::oracle::oracle_ef;
use crate::par::*;
use crate::states::{custom, eigenstate, ghz_like, parse_amplitudes, squeezed};
use crate::Error;

/// Largest ensemble `oracle-check` accepts.
pub const ORACLE_CHECK_MAX: u32 = 10;
/// Pass threshold for `oracle-check`.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "pi-entangle", version, about = "Exact entanglement of formation for permutationally invariant spin ensembles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// E_F of one state at one partition.
    Point(PointArgs),
    /// E_F of |J, M> for M = 0 (or 1/2) up to J.
    SweepM(SweepMArgs),
    /// E_F over every J at maximal or minimal magnetization.
    SweepJ(SweepJArgs),
    /// E_F at minimal |M| over a range of particle numbers.
    SweepNParticles(SweepNArgs),
    /// E_F at minimal |M| over a range of partitions n.
    SweepPartition(SweepPartitionArgs),
    /// E_F of GHZ-like states over J.
    Ghz(GhzArgs),
    /// E_F of spin-squeezed states over integer J, for each tanh(r).
    Squeezed(SqueezedArgs),
    /// Distribution of qudit levels d = 2 min(j1, j2) + 1.
    Ddist(DdistArgs),
    /// Compare the E_F formula against the brute-force oracle for all small cases.
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A half-integer given either as `--J 3/2` or doubled as `--J2 3`.
#[derive(Debug, Clone, Args)]
pub struct SpinArg {
    /// Total spin J (integer, k/2, or x.5).
    #[arg(long = "J", allow_hyphen_values = true)]
    pub j: Option<HalfInt>,
    /// Total spin given as 2J.
    #[arg(long = "J2", conflicts_with = "j")]
    pub j2: Option<i64>,
}

impl SpinArg {
    fn resolve(&self) -> Result<HalfInt, CliError> {
        match (self.j, self.j2) {
            (Some(j), None) => Ok(j),
            (None, Some(t)) => Ok(HalfInt::from_twice(t)),
            _ => Err(CliError::Input("one of --J or --J2 is required".into())),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[arg(long = "N")]
    pub particles: u32,
    #[command(flatten)]
    pub spin: SpinArg,
    /// Magnetization M for an eigenstate.
    #[arg(long = "M", allow_hyphen_values = true, conflicts_with_all = ["m2", "amplitudes"])]
    pub m: Option<HalfInt>,
    /// Magnetization given as 2M.
    #[arg(long = "M2", allow_hyphen_values = true, conflicts_with = "amplitudes")]
    pub m2: Option<i64>,
    /// Amplitudes "re[,im] re[,im] ..." from M = -J upward.
    #[arg(long, allow_hyphen_values = true)]
    pub amplitudes: Option<String>,
    #[arg(long = "n")]
    pub partition: u32,
    /// Also report every (j1, j2) block on standard error.
    #[arg(long)]
    pub blocks: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SweepMArgs {
    #[arg(long = "N")]
    pub particles: u32,
    #[command(flatten)]
    pub spin: SpinArg,
    #[arg(long = "n")]
    pub partition: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MagnetizationMode {
    /// M = J
    Max,
    /// M = 0 or 1/2
    Min,
}

#[derive(Debug, Clone, Args)]
pub struct SweepJArgs {
    #[arg(long = "N")]
    pub particles: u32,
    #[arg(long = "m-mode", value_enum)]
    pub m_mode: MagnetizationMode,
    #[arg(long = "n")]
    pub partition: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpinMode {
    /// Lowest J (0 or 1/2)
    Min,
    /// J = N/2
    Dicke,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitMode {
    /// n = floor(N/2)
    Even,
    /// n = 1
    Single,
}

#[derive(Debug, Clone, Args)]
pub struct SweepNArgs {
    #[arg(long = "j-mode", value_enum)]
    pub j_mode: SpinMode,
    #[arg(long = "split", value_enum)]
    pub split: SplitMode,
    #[arg(long = "N-min", default_value_t = 2)]
    pub n_min: u32,
    #[arg(long = "N-max")]
    pub n_max: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SweepPartitionArgs {
    #[arg(long = "N")]
    pub particles: u32,
    #[command(flatten)]
    pub spin: SpinArg,
    #[arg(long = "n-min", default_value_t = 1)]
    pub n_min: u32,
    /// Defaults to N - 1.
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct GhzArgs {
    #[arg(long = "N")]
    pub particles: u32,
    #[arg(long = "n")]
    pub partition: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SqueezedArgs {
    #[arg(long = "N")]
    pub particles: u32,
    /// Comma-separated tanh(r) values in [0, 1].
    #[arg(long = "t", value_delimiter = ',', required = true)]
    pub t: Vec<f64>,
    #[arg(long = "n")]
    pub partition: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct DdistArgs {
    #[arg(long = "N")]
    pub particles: u32,
    /// Comma-separated total spins.
    #[arg(long = "J", value_delimiter = ',', required = true)]
    pub j: Vec<HalfInt>,
    #[arg(long = "n")]
    pub partition: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct OracleCheckArgs {
    #[arg(long = "nmax", default_value_t = 8)]
    pub nmax: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub csv: String,
    /// Extra human-readable report for standard error.
    pub diagnostics: Option<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn csv(csv: String) -> Self {
        Outcome { csv, diagnostics: None, exit_code: 0 }
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-5..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        trim(&format!("{:.*}", (11 - exp) as usize, x))
    }
}

fn csv(header: &str, rows: Vec<String>) -> String {
    let mut out = String::with_capacity(header.len() + 1 + rows.iter().map(|r| r.len() + 1).sum::<usize>());
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn min_projection(j: HalfInt) -> HalfInt {
    HalfInt::from_twice(j.twice() % 2)
}

fn total_spins(particles: u32) -> impl Iterator<Item = HalfInt> {
    (j_min(particles).twice()..=particles as i64).step_by(2).map(HalfInt::from_twice)
}

fn require_particles(particles: u32) -> Result<(), CliError> {
    if particles < 2 {
        return Err(CliError::Input(format!("N = {particles}: need at least 2 particles to split")));
    }
    Ok(())
}

fn eigen_row(particles: u32, j: HalfInt, m: HalfInt, n: u32) -> Result<f64, Error> {
    Ok(ef_eigenstate(particles, j, m, n)?.ef_bits)
}

fn rows<T: Send + Sync>(items: Vec<T>, f: impl Fn(&T) -> Result<String, Error> + Sync + Send) -> Result<Vec<String>, CliError> {
    Ok(items.par_iter().map(f).collect::<Result<Vec<_>, Error>>()?)
}

pub fn cmd_point(args: &PointArgs) -> Result<Outcome, CliError> {
    let (particles, n) = (args.particles, args.partition);
    let j = args.spin.resolve()?;
    let m = match (args.m, args.m2) {
        (Some(m), None) => Some(m),
        (None, Some(t)) => Some(HalfInt::from_twice(t)),
        (Some(_), Some(_)) => return Err(CliError::Input("give only one of --M and --M2".into())),
        (None, None) => None,
    };
    let (label, result) = match (m, &args.amplitudes) {
        (Some(m), None) => (m.to_string(), ef_eigenstate(particles, j, m, n)?),
        (None, Some(text)) => {
            let state = custom(particles, j, &parse_amplitudes(text)?)?;
            ("custom".to_string(), ef(&state, n)?)
        }
        _ => return Err(CliError::Input("give either --M/--M2 or --amplitudes".into())),
    };
    let row = format!("{particles},{j},{label},{n},{}", format_float(result.ef_bits));
    let mut outcome = Outcome::csv(csv("N,J,M_or_state,n,EF_bits", vec![row]));
    if args.blocks {
        let mut text = String::from("j1,j2,weight,entropy_bits\n");
        for b in &result.blocks {
            writeln!(text, "{},{},{},{}", b.j1, b.j2, b.weight, format_float(b.entropy)).unwrap();
        }
        outcome.diagnostics = Some(text);
    }
    Ok(outcome)
}

pub fn cmd_sweep_m(args: &SweepMArgs) -> Result<Outcome, CliError> {
    let (particles, n) = (args.particles, args.partition);
    let j = args.spin.resolve()?;
    require_particles(particles)?;
    crate::angular::validate_total_spin(j, particles)?;
    let ms: Vec<HalfInt> = (min_projection(j).twice()..=j.twice()).step_by(2).map(HalfInt::from_twice).collect();
    let body = rows(ms, |&m| {
        Ok(format!("{particles},{j},{n},{m},{}", format_float(eigen_row(particles, j, m, n)?)))
    })?;
    Ok(Outcome::csv(csv("N,J,n,M,EF_bits", body)))
}

pub fn cmd_sweep_j(args: &SweepJArgs) -> Result<Outcome, CliError> {
    let (particles, n) = (args.particles, args.partition);
    require_particles(particles)?;
    let js: Vec<HalfInt> = total_spins(particles).collect();
    let mode = args.m_mode;
    let body = rows(js, |&j| {
        let m = match mode {
            MagnetizationMode::Max => j,
            MagnetizationMode::Min => min_projection(j),
        };
        Ok(format!("{particles},{j},{m},{n},{}", format_float(eigen_row(particles, j, m, n)?)))
    })?;
    Ok(Outcome::csv(csv("N,J,M,n,EF_bits", body)))
}

pub fn cmd_sweep_n_particles(args: &SweepNArgs) -> Result<Outcome, CliError> {
    if args.n_min < 2 || args.n_max < args.n_min {
        return Err(CliError::Input(format!("need 2 <= N-min <= N-max, got {}..{}", args.n_min, args.n_max)));
    }
    let (j_mode, split) = (args.j_mode, args.split);
    let body = rows((args.n_min..=args.n_max).collect(), |&particles| {
        let j = match j_mode {
            SpinMode::Min => j_min(particles),
            SpinMode::Dicke => HalfInt::from_twice(particles as i64),
        };
        let m = min_projection(j);
        let n = match split {
            SplitMode::Even => particles / 2,
            SplitMode::Single => 1,
        };
        Ok(format!("{particles},{j},{m},{n},{}", format_float(eigen_row(particles, j, m, n)?)))
    })?;
    Ok(Outcome::csv(csv("N,J,M,n,EF_bits", body)))
}

pub fn cmd_sweep_partition(args: &SweepPartitionArgs) -> Result<Outcome, CliError> {
    let particles = args.particles;
    require_particles(particles)?;
    let j = args.spin.resolve()?;
    let n_max = args.n_max.unwrap_or(particles - 1);
    if args.n_min < 1 || n_max >= particles || n_max < args.n_min {
        return Err(CliError::Input(format!("partition range {}..={n_max} invalid for N = {particles}", args.n_min)));
    }
    let m = min_projection(j);
    let body = rows((args.n_min..=n_max).collect(), |&n| {
        Ok(format!("{particles},{j},{m},{n},{}", format_float(eigen_row(particles, j, m, n)?)))
    })?;
    Ok(Outcome::csv(csv("N,J,M,n,EF_bits", body)))
}

pub fn cmd_ghz(args: &GhzArgs) -> Result<Outcome, CliError> {
    let (particles, n) = (args.particles, args.partition);
    require_particles(particles)?;
    let js: Vec<HalfInt> = total_spins(particles).filter(|j| j.twice() > 0).collect();
    let body = rows(js, |&j| {
        let e = ef(&ghz_like(particles, j)?, n)?.ef_bits;
        Ok(format!("{particles},{j},{n},{}", format_float(e)))
    })?;
    Ok(Outcome::csv(csv("N,J,n,EF_bits", body)))
}

pub fn cmd_squeezed(args: &SqueezedArgs) -> Result<Outcome, CliError> {
    let (particles, n) = (args.particles, args.partition);
    require_particles(particles)?;
    if particles % 2 != 0 {
        return Err(CliError::Input(format!("squeezed states need even N, got {particles}")));
    }
    let cases: Vec<(f64, HalfInt)> =
        args.t.iter().flat_map(|&t| total_spins(particles).map(move |j| (t, j))).collect();
    let body = rows(cases, |&(t, j)| {
        let e = ef(&squeezed(particles, j, t)?, n)?.ef_bits;
        Ok(format!("{particles},{},{j},{n},{}", format_float(t), format_float(e)))
    })?;
    Ok(Outcome::csv(csv("N,t,J,n,EF_bits", body)))
}

pub fn cmd_ddist(args: &DdistArgs) -> Result<Outcome, CliError> {
    let (particles, n) = (args.particles, args.partition);
    let mut body = Vec::new();
    for &j in &args.j {
        for (d, p) in qudit_distribution(j, particles, n)?.iter() {
            body.push(format!("{particles},{j},{n},{d},{}", format_float(p)));
        }
    }
    Ok(Outcome::csv(csv("N,J,n,d,prob", body)))
}

/// Per-`N` deviation between formula and oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSummary {
    pub particles: u32,
    pub cases: usize,
    pub max_abs_dev: f64,
}

/// Every eigenstate `(J, M, n)` for `N = 2..=nmax`, formula vs oracle.
pub fn oracle_comparison(nmax: u32) -> Result<Vec<OracleSummary>, Error> {
    (2..=nmax)
        .map(|particles| {
            let cases: Vec<(HalfInt, HalfInt, u32)> = total_spins(particles)
                .flat_map(|j| j.projections().map(move |m| (j, m)))
                .flat_map(|(j, m)| (1..particles).map(move |n| (j, m, n)))
                .collect();
            let devs = cases
                .par_iter()
                .map(|&(j, m, n)| {
                    let formula = ef_eigenstate(particles, j, m, n)?.ef_bits;
                    let brute = oracle_ef(&eigenstate(particles, j, m)?, n)?;
                    Ok((formula - brute).abs())
                })
                .collect::<Result<Vec<f64>, Error>>()?;
            Ok(OracleSummary {
                particles,
                cases: devs.len(),
                max_abs_dev: devs.iter().copied().fold(0.0, f64::max),
            })
        })
        .collect()
}

pub fn cmd_oracle_check(args: &OracleCheckArgs) -> Result<Outcome, CliError> {
    if !(2..=ORACLE_CHECK_MAX).contains(&args.nmax) {
        return Err(CliError::Input(format!("--nmax must be in 2..={ORACLE_CHECK_MAX}, got {}", args.nmax)));
    }
    let summary = oracle_comparison(args.nmax)?;
    let total: usize = summary.iter().map(|s| s.cases).sum();
    let worst = summary.iter().map(|s| s.max_abs_dev).fold(0.0, f64::max);
    let mut body: Vec<String> = summary
        .iter()
        .map(|s| format!("{},{},{:.3e}", s.particles, s.cases, s.max_abs_dev))
        .collect();
    body.push(format!("all,{total},{worst:.3e}"));
    let pass = worst <= ORACLE_TOLERANCE;
    Ok(Outcome {
        csv: csv("N,cases,max_abs_dev", body),
        diagnostics: Some(format!(
            "{}: {total} cases, max |formula - oracle| = {worst:.3e} (tolerance {ORACLE_TOLERANCE:e})\n",
            if pass { "PASS" } else { "FAIL" }
        )),
        exit_code: if pass { 0 } else { 1 },
    })
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Point(a) => &a.output,
        Command::SweepM(a) => &a.output,
        Command::SweepJ(a) => &a.output,
        Command::SweepNParticles(a) => &a.output,
        Command::SweepPartition(a) => &a.output,
        Command::Ghz(a) => &a.output,
        Command::Squeezed(a) => &a.output,
        Command::Ddist(a) => &a.output,
        Command::OracleCheck(a) => &a.output,
    }
}

/// Runs a parsed command without touching the filesystem.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Point(a) => cmd_point(a),
        Command::SweepM(a) => cmd_sweep_m(a),
        Command::SweepJ(a) => cmd_sweep_j(a),
        Command::SweepNParticles(a) => cmd_sweep_n_particles(a),
        Command::SweepPartition(a) => cmd_sweep_partition(a),
        Command::Ghz(a) => cmd_ghz(a),
        Command::Squeezed(a) => cmd_squeezed(a),
        Command::Ddist(a) => cmd_ddist(a),
        Command::OracleCheck(a) => cmd_oracle_check(a),
    }
}

/// Runs a command and writes its CSV to `--out` or standard output.
/// Returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = execute(&cli.command).and_then(|outcome| {
        match &output_of(&cli.command).out {
            Some(path) => std::fs::write(path, &outcome.csv)?,
            None => {
                use std::io::Write;
                std::io::stdout().lock().write_all(outcome.csv.as_bytes())?;
            }
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            if let Some(d) = outcome.diagnostics {
                eprint!("{d}");
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("pi-entangle: {e}");
            e.exit_code()
        }
    }
}
