//! The five subcommands as pure functions from configuration to rendered text.

use log::{info, warn};
use num_bigint::BigInt;
use serde::Serialize;
use spectral_ce::branch::{critical_wave_number, sample_branch, solve_diffusion_mode};
use spectral_ce::kinetic::{
    build_operator, default_time_step, gauss_hermite_grid, operator_spectrum, simulate_decay,
    DEFAULT_T_END_OVER_TAU,
};
use spectral_ce::series::{
    a000699, ce_coefficients, gaussian_moment_series, ln_abs, MAX_ORDER,
};
use spectral_ce::truncation::{
    classify_stability, compare_to_exact, ComparisonReport, TruncationReport,
};
use spectral_ce::{Complex64, SQRT_HALF_PI};

use crate::config::{Format, SweepConfig};
use crate::error::{CliError, CliResult};
use crate::svg;
use crate::table::{fmt_num, fmt_opt, tables_to_csv, Table};

/// Text produced by a command, plus an optional figure.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub body: String,
    pub svg: Option<String>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn cmd_branch(cfg: &SweepConfig) -> CliResult<Rendered> {
    let grid = cfg.k_grid()?;
    let table = sample_branch(cfg.tau, &grid)?;
    if table.points.is_empty() {
        warn!("no grid point lies below k_crit = {}", table.k_crit);
    }
    info!(
        "{} subcritical points, {} excluded",
        table.points.len(),
        table.excluded.len()
    );
    let body = match cfg.output.format {
        Format::Json => json(&table),
        Format::Csv => {
            let mut rows = Table::new(["k", "tau_k", "lambda", "residual"]);
            for p in &table.points {
                rows.push(vec![
                    fmt_num(p.k),
                    fmt_num(p.tau_k()),
                    fmt_num(p.lambda),
                    fmt_num(p.residual),
                ]);
            }
            let mut excluded = Table::new(["excluded_k"]);
            for &k in &table.excluded {
                excluded.push(vec![fmt_num(k)]);
            }
            tables_to_csv(&[rows, excluded])
        }
    };
    Ok(Rendered { body, svg: None })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CeRow {
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub c_n: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub a_n: BigInt,
    /// `|c_n| / (2n−1)!!`.
    pub ratio: f64,
    /// `|c_n|^{1/(2n)}`.
    pub root_test: f64,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `|c_n| = a_n` for every listed coefficient.
pub fn self_check(coeffs: &[BigInt], chord_counts: &[BigInt]) -> CliResult<()> {
    if coeffs.len() != chord_counts.len() {
        return Err(CliError::SelfCheck(format!(
            "{} coefficients against {} reference terms",
            coeffs.len(),
            chord_counts.len()
        )));
    }
    for (i, (c, a)) in coeffs.iter().zip(chord_counts).enumerate() {
        if c.magnitude() != a.magnitude() || a.sign() != num_bigint::Sign::Plus {
            return Err(CliError::SelfCheck(format!(
                "|c_{}| = {} but a_{} = {a}",
                i + 1,
                c.magnitude(),
                i + 1
            )));
        }
    }
    Ok(())
}

pub fn ce_rows(order: usize) -> CliResult<Vec<CeRow>> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(CliError::Config(format!(
            "order must lie in 1..={MAX_ORDER}, got {order}"
        )));
    }
    let series = ce_coefficients(order)?;
    let chords = a000699(order);
    self_check(series.coeffs(), &chords.terms)?;
    let moments = gaussian_moment_series(order);
    Ok(series
        .coeffs()
        .iter()
        .zip(chords.terms)
        .enumerate()
        .map(|(i, (c, a))| {
            let n = i + 1;
            let ln_c = ln_abs(c);
            CeRow {
                n,
                c_n: c.clone(),
                a_n: a,
                ratio: (ln_c - ln_abs(&moments[n])).exp(),
                root_test: (ln_c / (2 * n) as f64).exp(),
            }
        })
        .collect())
}

pub fn cmd_ce(order: usize, format: Format) -> CliResult<Rendered> {
    let rows = ce_rows(order)?;
    let body = match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut t = Table::new(["n", "c_n", "a_n", "ratio", "root_test"]);
            for r in &rows {
                t.push(vec![
                    r.n.to_string(),
                    r.c_n.to_string(),
                    r.a_n.to_string(),
                    fmt_num(r.ratio),
                    fmt_num(r.root_test),
                ]);
            }
            t.to_csv()
        }
    };
    Ok(Rendered { body, svg: None })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct CompareOutput<'a> {
    k_crit: f64,
    #[serde(flatten)]
    report: &'a ComparisonReport,
    stability: Vec<TruncationReport>,
}

pub fn compare_report(cfg: &SweepConfig) -> CliResult<ComparisonReport> {
    let x_grid: Vec<f64> = cfg.k_grid()?.iter().map(|k| cfg.tau * k).collect();
    Ok(compare_to_exact(cfg.tau, &x_grid, &cfg.orders)?)
}

pub fn cmd_compare(cfg: &SweepConfig) -> CliResult<Rendered> {
    let report = compare_report(cfg)?;
    if report.rows.len() == report.excluded.len() {
        warn!("no grid point lies below the critical wave number");
    }
    let body = match cfg.output.format {
        Format::Json => {
            let max_order = cfg.orders.iter().copied().max().unwrap_or(1);
            let series = ce_coefficients(max_order)?;
            let stability = cfg
                .orders
                .iter()
                .map(|&n| classify_stability(&series, n))
                .collect::<Result<Vec<_>, _>>()?;
            json(&CompareOutput {
                k_crit: critical_wave_number(cfg.tau)?,
                report: &report,
                stability,
            })
        }
        Format::Csv => {
            let mut header = vec!["x".to_string(), "k".into(), "exact".into()];
            header.extend(report.orders.iter().map(|n| format!("T{n}")));
            let mut t = Table::new(header);
            for row in &report.rows {
                let mut fields = vec![fmt_num(row.x), fmt_num(row.k), fmt_opt(row.exact)];
                fields.extend(row.truncations.iter().map(|&v| fmt_num(v)));
                t.push(fields);
            }
            t.to_csv()
        }
    };
    Ok(Rendered {
        body,
        svg: Some(svg::compare_svg(&report)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationRow {
    pub k: f64,
    pub tau: f64,
    pub velocities: usize,
    pub kinetic_rate: f64,
    /// `None` beyond the critical wave number.
    pub lambda_d: Option<f64>,
    pub abs_dev: Option<f64>,
    pub rel_dev: Option<f64>,
    pub isolated_mode: bool,
}

pub fn simulation_rows(
    cfg: &SweepConfig,
    t_end: Option<f64>,
    dt: Option<f64>,
) -> CliResult<Vec<SimulationRow>> {
    let ks = cfg.k_grid()?;
    let grid = gauss_hermite_grid(cfg.velocities)?;
    let t_end = t_end.unwrap_or(DEFAULT_T_END_OVER_TAU * cfg.tau);
    let mut rows = Vec::with_capacity(ks.len());
    for k in ks {
        let step = dt.unwrap_or_else(|| default_time_step(k, cfg.tau, &grid));
        let fit = simulate_decay(k, cfg.tau, &grid, t_end, step)?;
        let lambda_d = solve_diffusion_mode(k, cfg.tau)?.map(|p| p.lambda);
        let abs_dev = lambda_d.map(|l| (fit.rate - l).abs());
        let rel_dev = lambda_d
            .zip(abs_dev)
            .map(|(l, d)| if l == 0.0 { d } else { d / l.abs() });
        if lambda_d.is_none() {
            warn!("k = {k}: no isolated mode beyond k_crit");
        }
        rows.push(SimulationRow {
            k,
            tau: cfg.tau,
            velocities: cfg.velocities,
            kinetic_rate: fit.rate,
            lambda_d,
            abs_dev,
            rel_dev,
            isolated_mode: lambda_d.is_some(),
        });
    }
    Ok(rows)
}

pub fn cmd_simulate(cfg: &SweepConfig, t_end: Option<f64>, dt: Option<f64>) -> CliResult<Rendered> {
    let rows = simulation_rows(cfg, t_end, dt)?;
    let body = match cfg.output.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut t = Table::new([
                "k",
                "tau",
                "velocities",
                "kinetic_rate",
                "lambda_d",
                "abs_dev",
                "rel_dev",
                "flag",
            ]);
            for r in &rows {
                t.push(vec![
                    fmt_num(r.k),
                    fmt_num(r.tau),
                    r.velocities.to_string(),
                    fmt_num(r.kinetic_rate),
                    fmt_opt(r.lambda_d),
                    fmt_opt(r.abs_dev),
                    fmt_opt(r.rel_dev),
                    if r.isolated_mode { "ok" } else { "no isolated mode" }.to_string(),
                ]);
            }
            t.to_csv()
        }
    };
    Ok(Rendered { body, svg: None })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct EigenvalueRow {
    re: f64,
    im: f64,
    hydrodynamic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct SpectrumOutput {
    k: f64,
    tau: f64,
    velocities: usize,
    essential_line: f64,
    hydrodynamic: Option<EigenvalueRow>,
    cluster_max_re: f64,
    cluster_spread: f64,
    eigenvalues: Vec<EigenvalueRow>,
}

fn eigen_row(l: Complex64, hydrodynamic: bool) -> EigenvalueRow {
    EigenvalueRow {
        re: l.re,
        im: l.im,
        hydrodynamic,
    }
}

pub fn cmd_spectrum(k: f64, tau: f64, velocities: usize, format: Format) -> CliResult<Rendered> {
    let grid = gauss_hermite_grid(velocities)?;
    let sp = operator_spectrum(&build_operator(k, tau, &grid)?)?;
    if tau * k >= SQRT_HALF_PI && sp.hydrodynamic.is_some() {
        warn!("an isolated eigenvalue was found beyond k_crit at this resolution");
    }
    let flagged = |i: usize| i == 0 && sp.hydrodynamic.is_some();
    let body = match format {
        Format::Json => json(&SpectrumOutput {
            k,
            tau,
            velocities,
            essential_line: sp.essential_line,
            hydrodynamic: sp.hydrodynamic.map(|l| eigen_row(l, true)),
            cluster_max_re: sp.cluster_max_re,
            cluster_spread: sp.cluster_spread,
            eigenvalues: sp
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(i, &l)| eigen_row(l, flagged(i)))
                .collect(),
        }),
        Format::Csv => {
            let mut t = Table::new(["re", "im", "hydrodynamic"]);
            for (i, l) in sp.eigenvalues.iter().enumerate() {
                t.push(vec![
                    fmt_num(l.re),
                    fmt_num(l.im),
                    u8::from(flagged(i)).to_string(),
                ]);
            }
            let mut line = Table::new(["essential_line"]);
            line.push(vec![fmt_num(sp.essential_line)]);
            tables_to_csv(&[t, line])
        }
    };
    Ok(Rendered {
        body,
        svg: Some(svg::spectrum_svg(&sp, tau)),
    })
}
