//! Batch driver: reads a run configuration, executes one job and renders a CSV table.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod jobs;
pub mod table;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{Loaded, Overrides, RunConfig};
pub use table::Table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Solver(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) | CliError::Io(_) => 3,
        }
    }
}

/// How a job that produced a table ended.
#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Success,
    /// Checks ran but some rows failed them.
    Failed(Vec<String>),
    /// The solver broke down; the table holds what was computed.
    Aborted(String),
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Failed(_) => 1,
            Status::Aborted(_) => 3,
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub status: Status,
    /// Human-readable summary for the terminal.
    pub notes: Vec<String>,
}

#[derive(Debug, Parser)]
#[command(name = "kgring", version, about = "Klein-Gordon ring-shaped pseudoharmonic spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub job: Job,
    /// Run configuration (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write the CSV here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Replaces the job's principal tolerance.
    #[arg(long, global = true, value_name = "REAL")]
    pub tol: Option<f64>,
    /// Energy search window.
    #[arg(long, global = true, value_name = "LO:HI", allow_hyphen_values = true, value_parser = config::parse_window)]
    pub window: Option<(f64, f64)>,
    /// Scan grid size for the root search.
    #[arg(long, global = true, value_name = "N")]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Job {
    /// Closed-form energies for every requested level.
    Spectrum,
    /// Sampled radial and polar eigenfunctions of one level.
    Wavefunction,
    /// Closed form against the shooting oracle.
    Verify,
    /// Nikiforov-Uvarov branch listing.
    NuReport,
    /// Nonrelativistic and oscillator limits.
    Limits,
}

impl Job {
    pub fn name(self) -> &'static str {
        match self {
            Job::Spectrum => "spectrum",
            Job::Wavefunction => "wavefunction",
            Job::Verify => "verify",
            Job::NuReport => "nu-report",
            Job::Limits => "limits",
        }
    }
}

impl Cli {
    pub fn overrides(&self) -> Overrides {
        Overrides { out: self.out.clone(), tol: self.tol, window: self.window, grid: self.grid }
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let path = self.config.as_ref().ok_or_else(|| CliError::Config("--config is required".into()))?;
        Loaded::from_path(path, &self.overrides())
    }
}

pub fn execute(job: Job, run: &Loaded) -> Result<Outcome, CliError> {
    match job {
        Job::Spectrum => jobs::spectrum::run(run),
        Job::Wavefunction => jobs::wavefunction::run(run),
        Job::Verify => jobs::verify::run(run),
        Job::NuReport => jobs::nu_report::run(run),
        Job::Limits => jobs::limits::run(run),
    }
}

/// Renders the outcome with its metadata block.
pub fn render(job: Job, run: &Loaded, outcome: &Outcome) -> Result<Vec<u8>, CliError> {
    let meta = [
        format!("kgring {}", env!("CARGO_PKG_VERSION")),
        format!("job: {}", job.name()),
        format!("config-sha256: {}", run.hash),
    ];
    outcome.table.render(&meta)
}
