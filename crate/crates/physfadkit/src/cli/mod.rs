//! Command-line front end. The binary only forwards its arguments to
//! [`run_from_args`]; everything here is callable in-process.
//!
//! Exit codes: 0 success, 2 input error (unreadable or invalid files, bad
//! flags, config length mismatch), 3 numeric failure (singular or
//! ill-conditioned systems, divergent series, rank-deficient fits).

mod commands;
mod manifest;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use commands::{cmd_bounds, cmd_channel, cmd_series_compare, cmd_zeta};
pub use manifest::{sha256_hex, RunManifest, MANIFEST_FILE};

use crate::analysis::AnalysisError;
use crate::channels::ChannelError;
use crate::experiments::{ExperimentError, Preset};
use crate::metrics::MetricsError;
use crate::numerics::NumericsError;
use crate::physics::PhysicsError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<PhysicsError> for CliError {
    fn from(e: PhysicsError) -> Self {
        match e {
            PhysicsError::Numerics(n) => n.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        match e {
            ChannelError::Physics(p) => p.into(),
            ChannelError::Numerics(n) => n.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        match e {
            MetricsError::Channel(c) => c.into(),
            MetricsError::InvalidArgument(m) => CliError::Input(m),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Physics(p) => p.into(),
            AnalysisError::Numerics(n) => n.into(),
            AnalysisError::InvalidArgument(m) => CliError::Input(m),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Physics(p) => p.into(),
            ExperimentError::Channel(c) => c.into(),
            ExperimentError::Metrics(m) => m.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("io error: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "physfadkit", version, about = "Coupled-dipole RIS channel simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact channel matrix H = [W⁻¹]_RT of a scene for one RIS configuration.
    Channel(ChannelArgs),
    /// Monte-Carlo linearity sweep (and reverberation time, if requested).
    Zeta(ZetaArgs),
    /// Coupling constants, truncation and round-trip bounds with measured values.
    Bounds(BoundsArgs),
    /// Per-order residual of the RIS Born-like series against the exact channel.
    SeriesCompare(SeriesCompareArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Directory for CSV outputs and the run manifest (created if missing).
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Base seed for every random stream.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "PHYSFADKIT_WORKERS", default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// Scene JSON file.
    #[arg(long)]
    pub scene: PathBuf,
    /// RIS configuration bitstring (1 = ON); default all ON.
    #[arg(long)]
    pub config: Option<String>,
    /// Frequency in units of f₀.
    #[arg(long, default_value_t = 1.0)]
    pub freq: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["spec", "preset"])))]
pub struct ZetaArgs {
    /// Sweep spec JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Built-in campaign.
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,
    /// Override the realization count of the spec.
    #[arg(long)]
    pub realizations: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum PresetArg {
    Fig2a,
    Fig2b,
    Fig4,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Fig2a => Preset::Fig2a,
            PresetArg::Fig2b => Preset::Fig2b,
            PresetArg::Fig4 => Preset::Fig4,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub scene: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub freq: f64,
    /// Largest truncation order reported.
    #[arg(long, default_value_t = 10)]
    pub k_max: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SeriesCompareArgs {
    #[arg(long)]
    pub scene: PathBuf,
    #[arg(long)]
    pub config: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub freq: f64,
    /// Highest number of RIS interactions kept.
    #[arg(long, default_value_t = 10)]
    pub k_max: usize,
    #[command(flatten)]
    pub common: Common,
}

/// Run one command; returns the paths written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    match &cli.command {
        Command::Channel(a) => cmd_channel(a),
        Command::Zeta(a) => cmd_zeta(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::SeriesCompare(a) => cmd_series_compare(a),
    }
}

/// Parse, run, report; returns the process exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
