//! Command-line front end: argument parsing, tables (CSV/JSON) and SVG figures.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use log::warn;

pub mod commands;
pub mod config;
mod error;
pub mod svg;
pub mod table;

pub use commands::{cmd_branch, cmd_ce, cmd_compare, cmd_simulate, cmd_spectrum, Rendered};
pub use config::{Format, OutputArgs, SweepConfig};
pub use error::{CliError, CliResult, EXIT_IO, EXIT_OK, EXIT_SELF_CHECK, EXIT_USAGE};

/// Log filter variable, e.g. `SPECTRAL_CE_LOG=info`.
pub const LOG_ENV: &str = "SPECTRAL_CE_LOG";

#[derive(Debug, Parser)]
#[command(name = "spectral-ce", version, about = "Diffusion branch, Chapman-Enskog series and kinetic cross-checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact decay rate of the diffusion mode on a wave-number grid.
    Branch(SweepConfig),
    /// Chapman-Enskog coefficients with growth diagnostics.
    Ce(CeArgs),
    /// Exact rate against truncated expansions, in scaled variables.
    Compare(SweepConfig),
    /// Kinetic decay rates against the exact rate.
    Simulate(SimulateArgs),
    /// All eigenvalues of the discrete kinetic operator.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CeArgs {
    /// Number of coefficients.
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub sweep: SweepConfig,
    /// Integration horizon [default: 40·tau].
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Time step [default: min(0.01·tau, 1/(k·v_max + 1/tau))].
    #[arg(long)]
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub tau: f64,
    #[arg(long, default_value_t = spectral_ce::kinetic::DEFAULT_VELOCITIES)]
    pub velocities: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Branch(c) | Command::Compare(c) => &c.output,
            Command::Ce(a) => &a.output,
            Command::Simulate(a) => &a.sweep.output,
            Command::Spectrum(a) => &a.output,
        }
    }

    pub fn render(&self) -> CliResult<Rendered> {
        match self {
            Command::Branch(c) => cmd_branch(c),
            Command::Ce(a) => cmd_ce(a.terms, a.output.format),
            Command::Compare(c) => cmd_compare(c),
            Command::Simulate(a) => cmd_simulate(&a.sweep, a.t_end, a.dt),
            Command::Spectrum(a) => cmd_spectrum(a.k, a.tau, a.velocities, a.output.format),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let rendered = cli.command.render()?;
    let output = cli.command.output();
    match &output.out {
        Some(path) => write_file(path, &rendered.body)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(rendered.body.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(CliError::Stdout)?;
        }
    }
    if let Some(path) = &output.svg {
        match &rendered.svg {
            Some(svg) => write_file(path, svg)?,
            None => warn!("--svg ignored: this command draws no figure"),
        }
    }
    Ok(())
}
