//! Command-line surface: JSON run configs, one subcommand per operation
//! family, CSV output with the resolved config as a `#` header line.
//!
//! Exit codes: 0 success, 1 config error, 2 numeric failure, 3 budget
//! exhausted (the partial CSV is kept).

mod commands;
mod config;
mod csv;

pub use commands::{cmd_bounds, cmd_decomp, cmd_effdim, cmd_online, cmd_profile, cmd_sweep, cmd_weights};
pub use config::{
    BoundRequest, BudgetSpec, DecompSpec, EffdimMethod, EffdimSpec, OnlineSpec, RunConfig, WeightsSpec, SCHEMA,
};
pub use csv::{embedded_config, format_f64, CsvWriter};

use crate::error::{Error, Result};
use clap::{Args, Parser, Subcommand};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "kregimes", version, about = "Kernel ridge regression regime analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// JSON run configuration
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV (default: config `out`, else stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Base seed, overriding the config
    #[arg(long)]
    pub seed: Option<u64>,
    /// Wall-clock budget in seconds
    #[arg(long)]
    pub budget_seconds: Option<u64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Effective dimensions and bias per (sigma, lambda)
    Effdim(CommonArgs),
    /// Lower bounds and the upper-lower band
    Bounds(CommonArgs),
    /// Monte-Carlo risk over the (n, sigma, lambda) grid
    Sweep(CommonArgs),
    /// Best risk per n under hyperparameter selection
    Profile(CommonArgs),
    /// Online growth with recursive inverse updates
    Online(CommonArgs),
    /// Averaged regression weights
    Weights(CommonArgs),
    /// Exact bias-variance decomposition of a polynomial design
    Decomp(CommonArgs),
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Effdim(a)
            | Command::Bounds(a)
            | Command::Sweep(a)
            | Command::Profile(a)
            | Command::Online(a)
            | Command::Weights(a)
            | Command::Decomp(a) => a,
        }
    }
}

/// Run one subcommand on a resolved config.
pub fn execute(command: &Command, cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Effdim(_) => cmd_effdim(cfg, out),
        Command::Bounds(_) => cmd_bounds(cfg, out),
        Command::Sweep(_) => cmd_sweep(cfg, out),
        Command::Profile(_) => cmd_profile(cfg, out),
        Command::Online(_) => cmd_online(cfg, out),
        Command::Weights(_) => cmd_weights(cfg, out),
        Command::Decomp(_) => cmd_decomp(cfg, out),
    }
}

pub fn load_config(args: &CommonArgs) -> Result<RunConfig> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", args.config.display())))?;
    Ok(RunConfig::from_json(&text)?.resolve(args.seed, args.budget_seconds, args.out.clone()))
}

pub fn run(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli.command.common())?;
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            execute(&cli.command, &cfg, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            execute(&cli.command, &cfg, &mut lock)?;
        }
    }
    Ok(())
}

/// Parse arguments, run, report errors on stderr, return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
