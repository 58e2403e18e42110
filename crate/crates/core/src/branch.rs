//! Diffusion-mode eigenvalue branch of the linear relaxation model.
//!
//! The hydrodynamic eigenvalue `λ_d(k, τ)` solves `Z(i(τλ+1)/(τk)) = iτk`.
//! With `y = (τλ+1)/(τk) > 0` this collapses to the real monotone equation
//! `φ(y) = τk`, which has a unique root for `0 < τk < √(π/2)` and none above.
//! The eigenvalue then follows from `λ = k·y − 1/τ`.

use serde::Serialize;

use crate::special::{phi_unchecked, plasma_z};
use crate::{Complex64, Error, Result, SQRT_HALF_PI};

/// Bracket width in `y` at which bisection stops.
pub const BRACKET_TOLERANCE: f64 = 1e-14;
/// Bound on `|Z(iy) − iτk|` every returned point satisfies.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Iteration cap shared by bracket expansion and bisection.
pub const MAX_ITERATIONS: usize = 200;
/// Distance to `√(π/2)` in `τk` below which a point is flagged near-critical.
pub const NEAR_CRITICAL_WINDOW: f64 = 1e-8;

/// One solved point of the diffusion branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchPoint {
    pub k: f64,
    pub tau: f64,
    /// Decay rate `λ_d(k, τ)`, in `(−1/τ, 0]`.
    pub lambda: f64,
    /// `|Z(i(τλ+1)/(τk)) − iτk|`; zero at `k = 0`.
    pub residual: f64,
    /// Set when `τk` is within [`NEAR_CRITICAL_WINDOW`] of `√(π/2)`.
    pub near_critical: bool,
}

impl BranchPoint {
    /// Scaled wave number `τk`.
    pub fn tau_k(&self) -> f64 {
        self.tau * self.k
    }

    /// Scaled eigenvalue `τ·λ_d`.
    pub fn scaled_lambda(&self) -> f64 {
        self.tau * self.lambda
    }
}

/// Sampled branch for a fixed relaxation time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchTable {
    pub tau: f64,
    pub k_crit: f64,
    /// Subcritical points, strictly increasing in `k`.
    pub points: Vec<BranchPoint>,
    /// Grid wave numbers at or beyond `k_crit`.
    pub excluded: Vec<f64>,
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidRelaxationTime(tau))
    }
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidWaveNumber(k))
    }
}

/// `k_crit = √(π/2)/τ`.
pub fn critical_wave_number(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(SQRT_HALF_PI / tau)
}

/// Solves `φ(y) = x` for `0 < x < √(π/2)`; returns `(y, bracket width)`.
fn solve_imaginary_axis(x: f64) -> Result<(f64, f64)> {
    debug_assert!(x > 0.0 && x < SQRT_HALF_PI);
    let f = |y: f64| phi_unchecked(y) - x;

    // f(0) = √(π/2) − x > 0 and f decreases strictly.
    let mut lo = 0.0;
    let mut hi = f64::max(2.0 / x, 1.0);
    let mut expansions = 0;
    while f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > MAX_ITERATIONS || !hi.is_finite() {
            return Err(Error::Bracketing("no sign change after bracket expansion"));
        }
    }

    let mut iterations = 0;
    while hi - lo > BRACKET_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket is down to adjacent floats
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::Bracketing("bisection iteration cap reached"));
        }
    }

    let mid = 0.5 * (lo + hi);
    let f_mid = f(mid);
    // Newton polish with φ′(y) = y·φ(y) − 1, kept only if it stays bracketed and helps.
    let slope = mid * phi_unchecked(mid) - 1.0;
    let mut y = mid;
    if slope < 0.0 {
        let candidate = mid - f_mid / slope;
        if candidate >= lo && candidate <= hi && f(candidate).abs() < f_mid.abs() {
            y = candidate;
        }
    }
    Ok((y, hi - lo))
}

/// Diffusion-mode decay rate `λ_d(k, τ)`, or `None` when `τk ≥ √(π/2)`.
pub fn solve_diffusion_mode(k: f64, tau: f64) -> Result<Option<BranchPoint>> {
    check_k(k)?;
    check_tau(tau)?;
    if k == 0.0 {
        return Ok(Some(BranchPoint {
            k,
            tau,
            lambda: 0.0,
            residual: 0.0,
            near_critical: false,
        }));
    }
    let x = tau * k;
    if x >= SQRT_HALF_PI {
        return Ok(None);
    }
    let (y, _) = solve_imaginary_axis(x)?;
    let z = plasma_z(Complex64::new(0.0, y))?;
    let residual = (z - Complex64::new(0.0, x)).norm();
    if residual > RESIDUAL_TOLERANCE {
        return Err(Error::Bracketing("residual above tolerance"));
    }
    // λ = k·y − 1/τ = (x·y − 1)/τ, written so that τ·λ depends on x only.
    let scaled = x * y - 1.0;
    // y > 0 pins scaled > −1; rounding cannot push a subcritical mode to zero.
    let scaled = scaled.clamp(-1.0 + f64::EPSILON, -f64::MIN_POSITIVE);
    Ok(Some(BranchPoint {
        k,
        tau,
        lambda: scaled / tau,
        residual,
        near_critical: SQRT_HALF_PI - x < NEAR_CRITICAL_WINDOW,
    }))
}

/// `λ̂(x) = τ·λ_d(x/τ, τ)`, evaluated at `τ = 1`.
pub fn scaled_eigenvalue(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    if x < 0.0 {
        return Err(Error::NegativeArgument(x));
    }
    if x >= SQRT_HALF_PI {
        return Err(Error::Supercritical(x));
    }
    Ok(solve_diffusion_mode(x, 1.0)?
        .map(|p| p.lambda)
        .expect("subcritical input always has a mode"))
}

/// Solves the branch on every grid point, splitting off supercritical ones.
pub fn sample_branch(tau: f64, k_grid: &[f64]) -> Result<BranchTable> {
    let k_crit = critical_wave_number(tau)?;
    let mut sorted = k_grid.to_vec();
    for &k in &sorted {
        check_k(k)?;
    }
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();

    let mut points = Vec::with_capacity(sorted.len());
    let mut excluded = Vec::new();
    for k in sorted {
        match solve_diffusion_mode(k, tau)? {
            Some(p) => points.push(p),
            None => excluded.push(k),
        }
    }
    Ok(BranchTable {
        tau,
        k_crit,
        points,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda(k: f64, tau: f64) -> Option<f64> {
        solve_diffusion_mode(k, tau).unwrap().map(|p| p.lambda)
    }

    #[test]
    fn critical_wave_number_values() {
        assert!((critical_wave_number(1.0).unwrap() - 1.253_314_137_3).abs() < 1e-10);
        assert!((critical_wave_number(2.0).unwrap() - 0.626_657_068_7).abs() < 1e-10);
        for tau in [0.3, 1.0, 7.0] {
            let phi0 = crate::special::phi(0.0).unwrap();
            assert!((phi0 - tau * critical_wave_number(tau).unwrap()).abs() < 1e-15);
        }
        assert_eq!(
            critical_wave_number(0.0),
            Err(Error::InvalidRelaxationTime(0.0))
        );
        assert!(critical_wave_number(-1.0).is_err());
    }

    #[test]
    fn zero_wave_number_is_conserved() {
        assert_eq!(lambda(0.0, 1.0), Some(0.0));
        assert_eq!(lambda(0.0, 3.0), Some(0.0));
    }

    #[test]
    fn beyond_critical_has_no_mode() {
        assert_eq!(lambda(1.3, 1.0), None);
        assert_eq!(lambda(SQRT_HALF_PI, 1.0), None);
    }

    #[test]
    fn small_wave_number_value() {
        assert!((lambda(0.1, 1.0).unwrap() + 0.009_903_73).abs() < 1e-6);
        assert!((scaled_eigenvalue(0.1).unwrap() + 0.009_903_73).abs() < 1e-6);
    }

    #[test]
    fn approaches_essential_line_at_criticality() {
        for tau in [0.5, 1.0, 2.0] {
            let k = (SQRT_HALF_PI - 1e-9) / tau;
            let p = solve_diffusion_mode(k, tau).unwrap().unwrap();
            assert!(p.near_critical);
            assert!((p.lambda + 1.0 / tau).abs() < 1e-6 / tau);
            assert!(p.lambda > -1.0 / tau);
        }
    }

    #[test]
    fn rejects_invalid_input() {
        assert_eq!(
            solve_diffusion_mode(-0.1, 1.0),
            Err(Error::InvalidWaveNumber(-0.1))
        );
        assert_eq!(
            solve_diffusion_mode(0.1, 0.0),
            Err(Error::InvalidRelaxationTime(0.0))
        );
        assert_eq!(scaled_eigenvalue(1.3), Err(Error::Supercritical(1.3)));
        assert_eq!(scaled_eigenvalue(-0.1), Err(Error::NegativeArgument(-0.1)));
    }

    #[test]
    fn scaled_eigenvalue_at_origin() {
        assert_eq!(scaled_eigenvalue(0.0).unwrap(), 0.0);
    }

    #[test]
    fn scaling_law_pair() {
        let a = 1.0 * lambda(0.5, 1.0).unwrap();
        let b = 0.5 * lambda(1.0, 0.5).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn sample_branch_cases() {
        let t = sample_branch(1.0, &[0.0]).unwrap();
        assert_eq!(t.points.len(), 1);
        assert_eq!((t.points[0].k, t.points[0].lambda), (0.0, 0.0));

        let t = sample_branch(1.0, &[0.2, 1.5, 0.1]).unwrap();
        assert_eq!(t.excluded, vec![1.5]);
        assert_eq!(t.points.len(), 2);
        assert!(t.points[0].k < t.points[1].k);
        assert!(t.points[0].lambda > t.points[1].lambda);

        assert!(sample_branch(1.0, &[0.1, -0.2]).is_err());
    }
}
