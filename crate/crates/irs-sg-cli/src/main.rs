//! `irs-sg`: analytic and Monte-Carlo pipelines for IRS-assisted cellular
//! downlinks, driven by a scenario file.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 configuration or usage
//! error, 3 validation tolerance exceeded.

mod axis;
mod commands;
mod figures;
mod output;

use axis::Axis;
use clap::{Parser, ValueEnum};
use figures::FigureId;
use irs_sg::scenario::ScenarioConfig;
use irs_sg::Scenario;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable that sets the worker-thread count.
pub const THREADS_ENV: &str = "IRS_SG_THREADS";

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Runtime(m) => write!(f, "{m}"),
        }
    }
}

impl From<irs_sg::Error> for CliError {
    fn from(e: irs_sg::Error) -> Self {
        match e {
            irs_sg::Error::Config { .. } | irs_sg::Error::MissingParameter(_) => CliError::Config(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Analytic,
    Simulate,
    Validate,
    Sweep,
}

#[derive(Debug, Parser)]
#[command(name = "irs-sg", version, about = "Coverage, rate and energy efficiency of IRS-assisted cellular downlinks")]
struct Args {
    /// Scenario file (flat key = value); defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Pipeline to run.
    #[arg(long, value_enum, required_unless_present_any = ["figure", "print_config"])]
    command: Option<Command>,

    /// Emit the data behind one figure instead of running a command.
    #[arg(long, conflicts_with = "command")]
    figure: Option<FigureId>,

    /// Output CSV; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Monte-Carlo trial count (overrides n_trials).
    #[arg(long)]
    trials: Option<usize>,

    /// Master seed (overrides seed).
    #[arg(long)]
    seed: Option<u64>,

    /// Sweep axis, KEY=start:step:end or KEY=v1,v2 (keys N, M, P, P_hat,
    /// lambda_b, tau_db, A).
    #[arg(long)]
    axis: Option<Axis>,

    /// Also save the raw trial batch (simulate only).
    #[arg(long)]
    batch: Option<PathBuf>,

    /// Print the effective scenario file and exit.
    #[arg(long)]
    print_config: bool,
}

fn load(args: &Args) -> Result<Scenario, CliError> {
    let mut c = match &args.config {
        Some(p) => ScenarioConfig::load(p)?,
        None => ScenarioConfig::default(),
    };
    if let Some(n) = args.trials {
        c.n_trials = n;
    }
    if let Some(s) = args.seed {
        c.seed = s;
    }
    Ok(Scenario::from_config(c)?)
}

// Ok(false) when a validation tolerance failed.
fn run(args: &Args) -> Result<bool, CliError> {
    let sc = load(args)?;
    if args.print_config {
        print!("{}", sc.config.to_text());
        return Ok(true);
    }
    let (table, pass) = match (args.figure, args.command) {
        (Some(id), _) => (figures::emit_figure_data(id, &sc, args.trials)?, true),
        (None, Some(Command::Analytic)) => (commands::analytic(&sc)?, true),
        (None, Some(Command::Simulate)) => (commands::simulate(&sc, args.batch.as_deref())?, true),
        (None, Some(Command::Validate)) => commands::validate(&sc)?,
        (None, Some(Command::Sweep)) => {
            let axis = args
                .axis
                .as_ref()
                .ok_or_else(|| CliError::Config("sweep needs --axis KEY=start:step:end".into()))?;
            (commands::sweep(&sc, axis)?, true)
        }
        (None, None) => return Err(CliError::Config("one of --command or --figure is required".into())),
    };
    match &args.out {
        Some(p) => table.write(std::io::BufWriter::new(std::fs::File::create(p)?))?,
        None => table.write(std::io::stdout().lock())?,
    }
    Ok(pass)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                // only fails if a pool already exists, which cannot happen here
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("irs-sg: configuration error: {THREADS_ENV} must be a positive integer, got '{v}'");
                return ExitCode::from(2);
            }
        }
    }
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("irs-sg: validation tolerance exceeded");
            ExitCode::from(3)
        }
        Err(e @ CliError::Config(_)) => {
            eprintln!("irs-sg: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("irs-sg: {e}");
            ExitCode::from(1)
        }
    }
}
