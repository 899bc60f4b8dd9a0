//! Library side of the `curvkit` binary: argument types, command
//! implementations and the exit-code contract.
//!
//! Exit codes: `0` success, `1` a requested assertion failed, `2` invalid
//! flags or unreadable/invalid input. Clap's own usage errors also exit with 2.

pub mod commands;
pub mod verify;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "curvkit",
    version,
    about = "Pointwise curvature tensor toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a model tensor and write it as JSON.
    Model(ModelArgs),
    /// Evaluate a diagnostic on a tensor file.
    Check(CheckArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Integrate dR/dt = Q(R) and write a CSV trace.
    Flow(FlowArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Sphere,
    FubiniStudy,
    R0,
    Sj,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub kind: ModelKind,
    #[arg(long)]
    pub n: usize,
    /// Sphere curvature, holomorphic sectional curvature, or an overall scale for r0 and sj.
    #[arg(long, allow_negative_numbers = true)]
    pub param: Option<f64>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckWhat {
    IsoMin,
    Pinch,
    Ricci,
    Weyl,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, env = "CURVKIT_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub what: CheckWhat,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Exit with status 1 unless the value is ≥ -tol (iso-min, pinch, ricci).
    #[arg(long)]
    pub assert_nonneg: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, env = "CURVKIT_SEED", default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Corrupt the input of the named check (negative control).
    #[arg(long, value_name = "CHECK_ID")]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Defaults to 0.8 / (2(n-1)·‖R₀‖).
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Initial step of the adaptive integrator.
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 10)]
    pub monitor_every: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Skip the isotropic-curvature monitor (the min_iso column is NaN).
    #[arg(long, conflicts_with = "assert_cone")]
    pub no_monitor: bool,
    /// Exit with status 1 if the monitored minimum isotropic curvature leaves the cone.
    #[arg(long)]
    pub assert_cone: bool,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
}

/// Successful completion, possibly with a failed assertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    AssertionFailed,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::AssertionFailed => 1,
        }
    }
}

/// Invalid input or an I/O failure; always exit status 2.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        2
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "i/o: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<curvkit::CurvError> for CliError {
    fn from(e: curvkit::CurvError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Model(a) => commands::model(a),
        Command::Check(a) => commands::check(a),
        Command::Verify(a) => verify::run(a),
        Command::Flow(a) => commands::flow(a),
    }
}
