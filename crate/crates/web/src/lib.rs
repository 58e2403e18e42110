//! WebAssembly bindings for the static demo page in `www/`. Every export
//! returns a JSON string; the `*_json` functions behind them are plain Rust.

use serde::Serialize;
use spectral_ce::branch::scaled_eigenvalue;
use spectral_ce::kinetic::{build_operator, gauss_hermite_grid, operator_spectrum};
use spectral_ce::series::{a000699, ce_coefficients, ln_abs, MAX_ORDER};
use spectral_ce::truncation::{classify_stability, eval_truncation};
use spectral_ce::SQRT_HALF_PI;
use wasm_bindgen::prelude::*;

/// Largest truncation order offered by the page.
pub const MAX_DEMO_ORDER: usize = 12;
/// Largest velocity count offered by the page.
pub const MAX_DEMO_VELOCITIES: usize = 160;

#[derive(Debug, Serialize)]
struct Curve {
    order: usize,
    values: Vec<f64>,
    stable: bool,
    sign_change_x: Option<f64>,
}

#[derive(Debug, Serialize)]
struct BranchCurves {
    x_crit: f64,
    x: Vec<f64>,
    exact: Vec<Option<f64>>,
    truncations: Vec<Curve>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Exact scaled rate and truncations `T_1..T_N` on `points` values of `τk`
/// in `[0, x_max]`.
pub fn branch_curves_json(max_order: usize, x_max: f64, points: usize) -> Result<String, String> {
    if !(1..=MAX_DEMO_ORDER).contains(&max_order) {
        return Err(format!("order must lie in 1..={MAX_DEMO_ORDER}"));
    }
    if !(x_max.is_finite() && x_max > 0.0) || !(2..=2000).contains(&points) {
        return Err("need x_max > 0 and 2..=2000 points".into());
    }
    let series = ce_coefficients(max_order).map_err(err)?;
    let x: Vec<f64> = (0..points)
        .map(|i| x_max * i as f64 / (points - 1) as f64)
        .collect();
    let exact = x
        .iter()
        .map(|&v| (v < SQRT_HALF_PI).then(|| scaled_eigenvalue(v)).transpose())
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let truncations = (1..=max_order)
        .map(|n| {
            let report = classify_stability(&series, n).map_err(err)?;
            let values = x
                .iter()
                .map(|&v| eval_truncation(&series, n, v))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            Ok(Curve {
                order: n,
                values,
                stable: report.stable,
                sign_change_x: report.sign_change_x,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    serde_json::to_string(&BranchCurves {
        x_crit: SQRT_HALF_PI,
        x,
        exact,
        truncations,
    })
    .map_err(err)
}

#[derive(Debug, Serialize)]
struct Spectrum {
    k: f64,
    tau: f64,
    essential_line: f64,
    re: Vec<f64>,
    im: Vec<f64>,
    hydrodynamic: Option<[f64; 2]>,
    exact: Option<f64>,
}

/// All eigenvalues of the discrete operator with `q` velocities.
pub fn spectrum_json(k: f64, tau: f64, q: usize) -> Result<String, String> {
    if q > MAX_DEMO_VELOCITIES {
        return Err(format!("at most {MAX_DEMO_VELOCITIES} velocities"));
    }
    let grid = gauss_hermite_grid(q).map_err(err)?;
    let sp = operator_spectrum(&build_operator(k, tau, &grid).map_err(err)?).map_err(err)?;
    let x = tau * k;
    let exact = if x < SQRT_HALF_PI {
        Some(scaled_eigenvalue(x).map_err(err)? / tau)
    } else {
        None
    };
    serde_json::to_string(&Spectrum {
        k,
        tau,
        essential_line: sp.essential_line,
        re: sp.eigenvalues.iter().map(|l| l.re).collect(),
        im: sp.eigenvalues.iter().map(|l| l.im).collect(),
        hydrodynamic: sp.hydrodynamic.map(|l| [l.re, l.im]),
        exact,
    })
    .map_err(err)
}

#[derive(Debug, Serialize)]
struct CeRow {
    n: usize,
    c_n: String,
    matches_chords: bool,
    root_test: f64,
}

/// Coefficients `c_1..c_N` as decimal strings with the chord-count check.
pub fn ce_table_json(order: usize) -> Result<String, String> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(format!("order must lie in 1..={MAX_ORDER}"));
    }
    let series = ce_coefficients(order).map_err(err)?;
    let chords = a000699(order);
    let rows: Vec<CeRow> = series
        .coeffs()
        .iter()
        .zip(&chords.terms)
        .enumerate()
        .map(|(i, (c, a))| CeRow {
            n: i + 1,
            c_n: c.to_string(),
            matches_chords: c.magnitude() == a.magnitude(),
            root_test: (ln_abs(c) / (2 * (i + 1)) as f64).exp(),
        })
        .collect();
    serde_json::to_string(&rows).map_err(err)
}

#[wasm_bindgen]
pub fn branch_curves(max_order: usize, x_max: f64, points: usize) -> Result<String, JsValue> {
    branch_curves_json(max_order, x_max, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn spectrum(k: f64, tau: f64, velocities: usize) -> Result<String, JsValue> {
    spectrum_json(k, tau, velocities).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ce_table(order: usize) -> Result<String, JsValue> {
    ce_table_json(order).map_err(|e| JsValue::from_str(&e))
}
