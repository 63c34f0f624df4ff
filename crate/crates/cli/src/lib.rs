// SPDX-License-Identifier: Apache-2.0

//! Batch front end: device report, holonomy sweep and dynamics validation.

pub mod commands;
pub mod config;
pub mod format;
pub mod ini;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use commands::run;
pub use config::{ConfigError, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "holonomy", version, about = "Non-Abelian holonomy of a circuit-QED tripod")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Qubit frequencies, couplings, detunings and dispersive shifts.
    Device(CommonArgs),
    /// Population difference over an (alpha, beta) grid.
    Sweep(CommonArgs),
    /// Direct evolution through both loop orders against the holonomy.
    Dynamics(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides `[output] dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Steps per loop for the holonomy.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub steps: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Domain(#[from] holonomy_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}
