//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "trapzopt",
    version,
    about = "Trapezoidal trajectory planning, energy/time sweeps, and PSO parameter tuning"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive a trapezoidal profile from exactly two of --v, --a, --T
    Profile(ProfileArgs),
    /// Plan the configured trajectory and export joint/path curves
    Simulate(RunArgs),
    /// Score a velocity grid and report the energy/time trade-off
    Sweep(RunArgs),
    /// Search per-segment (v, a) parameters with the particle swarm
    Optimize(RunArgs),
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Peak path velocity (1/s)
    #[arg(long)]
    pub v: Option<f64>,
    /// Path acceleration (1/s^2)
    #[arg(long)]
    pub a: Option<f64>,
    /// Total duration (s)
    #[arg(long = "T")]
    pub duration: Option<f64>,
    /// Sample rate for profile.csv (Hz)
    #[arg(long, default_value_t = crate::config::DEFAULT_SAMPLE_RATE_HZ)]
    pub rate: f64,
    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Run-config JSON file
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (overrides the config's out_dir)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed override for the optimizer
    #[arg(long)]
    pub seed: Option<u64>,
}
