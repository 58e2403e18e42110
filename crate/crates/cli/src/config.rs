//! Sweep configuration shared by the table commands.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use spectral_ce::branch::critical_wave_number;
use spectral_ce::kinetic::DEFAULT_VELOCITIES;
use spectral_ce::truncation::DEFAULT_GRID_POINTS;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also write an SVG figure (compare and spectrum only).
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

/// Wave-number sweep. Without `--kmax` the grid is `points` values on the
/// half-open interval `[kmin, k_crit)`; with it, `points` values on the
/// closed interval `[kmin, kmax]`.
#[derive(Debug, Clone, Args)]
pub struct SweepConfig {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub tau: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub kmin: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    pub points: usize,
    /// Truncation orders, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3, 4])]
    pub orders: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_VELOCITIES)]
    pub velocities: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            tau: 1.0,
            kmin: 0.0,
            kmax: None,
            points: DEFAULT_GRID_POINTS,
            orders: vec![1, 2, 3, 4],
            velocities: DEFAULT_VELOCITIES,
            output: OutputArgs::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(CliError::Config(format!("--tau must be positive, got {}", self.tau)));
        }
        if !(self.kmin.is_finite() && self.kmin >= 0.0) {
            return Err(CliError::Config(format!("--kmin must be >= 0, got {}", self.kmin)));
        }
        if let Some(kmax) = self.kmax {
            if !(kmax.is_finite() && kmax > self.kmin) {
                return Err(CliError::Config(format!(
                    "--kmax must exceed --kmin ({}), got {kmax}",
                    self.kmin
                )));
            }
        }
        if self.points < 2 {
            return Err(CliError::Config(format!("--points must be >= 2, got {}", self.points)));
        }
        if self.orders.is_empty() || self.orders.contains(&0) {
            return Err(CliError::Config("--orders must list positive orders".into()));
        }
        Ok(())
    }

    pub fn k_grid(&self) -> CliResult<Vec<f64>> {
        self.validate()?;
        let n = self.points;
        match self.kmax {
            Some(hi) => Ok((0..n)
                .map(|i| {
                    if i + 1 == n {
                        hi
                    } else {
                        self.kmin + (hi - self.kmin) * i as f64 / (n - 1) as f64
                    }
                })
                .collect()),
            None => {
                let kc = critical_wave_number(self.tau)?;
                if self.kmin >= kc {
                    return Err(CliError::Config(format!(
                        "--kmin {} is not below k_crit = {kc}; pass --kmax",
                        self.kmin
                    )));
                }
                Ok((0..n)
                    .map(|i| self.kmin + (kc - self.kmin) * i as f64 / n as f64)
                    .collect())
            }
        }
    }
}
