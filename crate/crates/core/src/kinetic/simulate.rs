//! Time evolution of the discretised model and of the closed density equation.

use serde::Serialize;

use super::operator::eigenmodes;
use super::{build_operator, DiscreteOperator, VelocityGrid};
use crate::{Complex64, Error, Result};

/// Relative norm growth tolerated before a step size is rejected.
const NORM_GROWTH_TOLERANCE: f64 = 1e-8;

/// Result of one kinetic run started from a unit-density local Maxwellian.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    pub k: f64,
    pub tau: f64,
    /// Least-squares slope of `ln|ρ̂(t)|` over `[t_end/2, t_end]`.
    pub rate: f64,
    pub t_end: f64,
    /// Step actually used (`t_end / steps`).
    pub dt: f64,
    pub times: Vec<f64>,
    pub density: Vec<Complex64>,
}

impl DecayFit {
    pub fn final_density(&self) -> Complex64 {
        *self.density.last().expect("at least the initial sample")
    }
}

fn check_time_grid(t_end: f64, dt: f64) -> Result<usize> {
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::InvalidTimeGrid("t_end must be positive"));
    }
    if !(dt.is_finite() && dt > 0.0 && dt <= t_end) {
        return Err(Error::InvalidTimeGrid("dt must lie in (0, t_end]"));
    }
    Ok((t_end / dt).round().max(1.0) as usize)
}

fn norm_sq(u: &[Complex64]) -> f64 {
    u.iter().map(|x| x.norm_sqr()).sum()
}

/// Classical fourth-order Runge-Kutta integration of `du/dt = A u` from the
/// equilibrium, followed by a log-linear fit of the density decay.
pub fn simulate_decay(
    k: f64,
    tau: f64,
    grid: &VelocityGrid,
    t_end: f64,
    dt: f64,
) -> Result<DecayFit> {
    let op = build_operator(k, tau, grid)?;
    let steps = check_time_grid(t_end, dt)?;
    let h = t_end / steps as f64;
    let q = op.len();

    let zero = Complex64::new(0.0, 0.0);
    let mut u = op.equilibrium();
    let initial_norm = norm_sq(&u);
    let (mut k1, mut k2, mut k3, mut k4) =
        (vec![zero; q], vec![zero; q], vec![zero; q], vec![zero; q]);
    let mut tmp = vec![zero; q];

    let mut times = Vec::with_capacity(steps + 1);
    let mut density = Vec::with_capacity(steps + 1);
    times.push(0.0);
    density.push(op.density(&u));

    for step in 1..=steps {
        op.apply(&u, &mut k1);
        for j in 0..q {
            tmp[j] = u[j] + k1[j] * (0.5 * h);
        }
        op.apply(&tmp, &mut k2);
        for j in 0..q {
            tmp[j] = u[j] + k2[j] * (0.5 * h);
        }
        op.apply(&tmp, &mut k3);
        for j in 0..q {
            tmp[j] = u[j] + k3[j] * h;
        }
        op.apply(&tmp, &mut k4);
        for j in 0..q {
            u[j] += (k1[j] + (k2[j] + k3[j]) * 2.0 + k4[j]) * (h / 6.0);
        }
        // The exact flow is a contraction, so any growth is a step-size problem.
        let n = norm_sq(&u);
        if !n.is_finite() || n > initial_norm * (1.0 + NORM_GROWTH_TOLERANCE) {
            return Err(Error::UnstableTimeStep { dt: h });
        }
        times.push(step as f64 * h);
        density.push(op.density(&u));
    }

    let rate = fit_log_slope(&times, &density, 0.5 * t_end);
    Ok(DecayFit {
        k,
        tau,
        rate,
        t_end,
        dt: h,
        times,
        density,
    })
}

/// Least-squares slope of `ln|ρ|` against `t` for samples with `t ≥ t_from`.
fn fit_log_slope(times: &[f64], density: &[Complex64], t_from: f64) -> f64 {
    let samples: Vec<(f64, f64)> = times
        .iter()
        .zip(density)
        .filter(|(t, _)| **t >= t_from)
        .map(|(&t, r)| (t, r.norm().ln()))
        .collect();
    let n = samples.len() as f64;
    if samples.len() < 2 {
        return f64::NAN;
    }
    let mean_t = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let mean_y = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, y) in &samples {
        sxy += (t - mean_t) * (y - mean_y);
        sxx += (t - mean_t) * (t - mean_t);
    }
    sxy / sxx
}

/// `ρ̂(t)` from the equilibrium via the eigen-expansion
/// `ρ̂(t) = Σ_m e^{λ_m t} (eᵀr_m)² / (r_mᵀ r_m)`.
pub fn density_from_spectrum(op: &DiscreteOperator, t: f64) -> Result<Complex64> {
    if op.k == 0.0 {
        // u = e spans the kernel of A.
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(eigenmodes(op)?
        .iter()
        .map(|m| (op.mode_lambda(m) * t).exp() * op.mode_weight(m))
        .sum())
}

/// `ρ̂(t) = ρ̂₀·e^{λt}`, the spectrally closed density dynamics.
pub fn evolve_closure(rho0: Complex64, lambda: f64, t: f64) -> Complex64 {
    rho0 * (lambda * t).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetic::gauss_hermite_grid;

    #[test]
    fn closure_evolution() {
        let r = Complex64::new(0.3, -0.2);
        assert_eq!(evolve_closure(r, 0.0, 5.0), r);
        assert_eq!(evolve_closure(r, -0.4, 0.0), r);
        assert!((evolve_closure(r, -0.5, 2.0) - r * (-1.0f64).exp()).norm() < 1e-16);
    }

    #[test]
    fn mass_is_conserved_at_zero_wave_number() {
        let g = gauss_hermite_grid(16).unwrap();
        let fit = simulate_decay(0.0, 1.0, &g, 10.0, 0.05).unwrap();
        assert!(fit.rate.abs() <= 1e-10);
        for r in &fit.density {
            assert!((r.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn oversized_step_is_rejected() {
        let g = gauss_hermite_grid(32).unwrap();
        let err = simulate_decay(2.0, 1.0, &g, 10.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::UnstableTimeStep { .. }));
    }

    #[test]
    fn invalid_time_grid() {
        let g = gauss_hermite_grid(4).unwrap();
        assert!(simulate_decay(0.1, 1.0, &g, 0.0, 0.1).is_err());
        assert!(simulate_decay(0.1, 1.0, &g, 1.0, -0.1).is_err());
        assert!(simulate_decay(0.1, 1.0, &g, 1.0, 2.0).is_err());
    }

    #[test]
    fn spectral_expansion_is_complete_at_time_zero() {
        let g = gauss_hermite_grid(24).unwrap();
        let op = build_operator(0.6, 1.0, &g).unwrap();
        let rho0 = density_from_spectrum(&op, 0.0).unwrap();
        assert!((rho0 - 1.0).norm() <= 1e-10);
    }
}
