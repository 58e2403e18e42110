//! The kinetic model at fixed `(k, τ)` on a Gauss-Hermite velocity grid.
//!
//! With `f = M·h` (`M` the unit Gaussian) and symmetrised unknowns
//! `u_j = √ω_j h_j`, the Fourier-space model reads `du/dt = A u` with
//!
//! ```text
//! A = −ik·diag(v) − (1/τ)(I − e eᵀ),   e_j = √ω_j,   ρ = eᵀu.
//! ```
//!
//! `A` is complex symmetric; its eigenvalues solve the discrete dispersion
//! relation `τ = Σ ω_j / (λ + 1/τ + ikv_j)` and the eigenvector of `λ` is
//! `r_j = √ω_j / (λ + 1/τ + ikv_j)`.

use nalgebra::{DMatrix, Schur};
use serde::Serialize;

use super::VelocityGrid;
use crate::{Complex64, Error, Result};

/// Minimum separation, in units of `1/τ`, between the top eigenvalue and the
/// rest before it is labelled hydrodynamic.
pub const HYDRODYNAMIC_GAP: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    pub k: f64,
    pub tau: f64,
    pub nodes: Vec<f64>,
    /// `e_j = √ω_j`, the unit vector spanning the collision kernel.
    pub sqrt_weights: Vec<f64>,
    pub matrix: DMatrix<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// All eigenvalues, by decreasing real part.
    pub eigenvalues: Vec<Complex64>,
    /// The isolated top eigenvalue, when the gap rule is met.
    pub hydrodynamic: Option<Complex64>,
    /// `−1/τ`.
    pub essential_line: f64,
    /// Largest real part among the eigenvalues other than the top one.
    pub cluster_max_re: f64,
    /// Largest `|Re λ + 1/τ|` over the non-hydrodynamic eigenvalues.
    pub cluster_spread: f64,
}

impl DiscreteOperator {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `A u` in O(Q) using the diagonal-plus-rank-one structure.
    pub fn apply(&self, u: &[Complex64], out: &mut [Complex64]) {
        let rho = self.density(u);
        let inv_tau = 1.0 / self.tau;
        for j in 0..u.len() {
            let stream = Complex64::new(0.0, -self.k * self.nodes[j]) * u[j];
            out[j] = stream - (u[j] - rho * self.sqrt_weights[j]) * inv_tau;
        }
    }

    /// `ρ = eᵀu`.
    pub fn density(&self, u: &[Complex64]) -> Complex64 {
        u.iter()
            .zip(&self.sqrt_weights)
            .map(|(x, e)| x * e)
            .sum()
    }

    /// Local Maxwellian with unit density: `u = e`.
    pub fn equilibrium(&self) -> Vec<Complex64> {
        self.sqrt_weights
            .iter()
            .map(|&e| Complex64::new(e, 0.0))
            .collect()
    }

    /// Collision projection `P = e eᵀ`.
    pub fn projection(&self) -> DMatrix<f64> {
        let q = self.len();
        DMatrix::from_fn(q, q, |i, j| self.sqrt_weights[i] * self.sqrt_weights[j])
    }

    /// Discrete dispersion function `1 − (1/τ) Σ ω_j/(λ + 1/τ + ikv_j)` and
    /// its derivative in `λ`.
    pub fn dispersion(&self, lambda: Complex64) -> (Complex64, Complex64) {
        let s = lambda + 1.0 / self.tau;
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for (v, e) in self.nodes.iter().zip(&self.sqrt_weights) {
            let d = (s + Complex64::new(0.0, self.k * v)).inv();
            f += e * e * d;
            df += e * e * d * d;
        }
        (1.0 - f / self.tau, df / self.tau)
    }

    /// Right (and, by symmetry, left) eigenvector for `λ`, scaled so the
    /// component at the nearest streaming pole equals `√ω_j`.
    pub fn eigenvector(&self, lambda: Complex64) -> Vec<Complex64> {
        self.mode_vector(&self.locate_mode(lambda))
    }

    /// Contribution `(eᵀr)² / (rᵀr)` of the mode `λ` to `ρ(t)` when starting
    /// from the equilibrium `u = e`.
    pub fn modal_density_weight(&self, lambda: Complex64) -> Complex64 {
        self.mode_weight(&self.locate_mode(lambda))
    }

    /// `ik(v_i − v_j)`.
    fn pole_gap(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(0.0, self.k * (self.nodes[i] - self.nodes[j]))
    }

    /// Writes `λ = −1/τ − ikv_j + δ` for the nearest pole `j` and refines `δ`
    /// by Newton steps on `τδ − ω_j − δ Σ_{i≠j} ω_i/(δ + ik(v_i − v_j))`,
    /// which stays well conditioned for modes hugging a pole.
    pub(crate) fn locate_mode(&self, lambda: Complex64) -> Mode {
        let s = lambda + 1.0 / self.tau;
        let pole = (0..self.len())
            .min_by(|&a, &b| {
                let da = (s + Complex64::new(0.0, self.k * self.nodes[a])).norm();
                let db = (s + Complex64::new(0.0, self.k * self.nodes[b])).norm();
                da.total_cmp(&db)
            })
            .expect("nonempty grid");
        let start = s + Complex64::new(0.0, self.k * self.nodes[pole]);
        if self.k == 0.0 {
            return Mode { pole, offset: start };
        }

        let residual = |delta: Complex64| -> (Complex64, Complex64) {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut dsum = Complex64::new(0.0, 0.0);
            for i in (0..self.len()).filter(|&i| i != pole) {
                let c = self.pole_gap(i, pole);
                let w = self.sqrt_weights[i] * self.sqrt_weights[i];
                let d = (delta + c).inv();
                sum += w * d;
                dsum += w * c * d * d;
            }
            let wj = self.sqrt_weights[pole] * self.sqrt_weights[pole];
            (self.tau * delta - wj - delta * sum, self.tau - dsum)
        };

        let max_move = 1e-8 * (1.0 + lambda.norm());
        let mut delta = start;
        let (mut h, mut dh) = residual(delta);
        for _ in 0..8 {
            let step = h / dh;
            if !step.is_finite() || (delta - step - start).norm() > max_move {
                break;
            }
            let candidate = delta - step;
            let (hc, dhc) = residual(candidate);
            if hc.norm().is_nan() || hc.norm() >= h.norm() {
                break;
            }
            delta = candidate;
            h = hc;
            dh = dhc;
        }
        Mode {
            pole,
            offset: delta,
        }
    }

    pub(crate) fn mode_lambda(&self, mode: &Mode) -> Complex64 {
        Complex64::new(-1.0 / self.tau, -self.k * self.nodes[mode.pole]) + mode.offset
    }

    fn mode_vector(&self, mode: &Mode) -> Vec<Complex64> {
        // r_i = √ω_i·δ/(δ + ik(v_i − v_j)), finite even as δ → 0
        (0..self.len())
            .map(|i| {
                if i == mode.pole {
                    Complex64::new(self.sqrt_weights[i], 0.0)
                } else {
                    self.sqrt_weights[i] * mode.offset / (mode.offset + self.pole_gap(i, mode.pole))
                }
            })
            .collect()
    }

    pub(crate) fn mode_weight(&self, mode: &Mode) -> Complex64 {
        let r = self.mode_vector(mode);
        let proj = self.density(&r);
        let norm: Complex64 = r.iter().map(|x| x * x).sum();
        proj * proj / norm
    }
}

/// Eigenvalue in pole-relative form `λ = −1/τ − ikv_pole + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Mode {
    pub pole: usize,
    pub offset: Complex64,
}

fn check_parameters(k: f64, tau: f64) -> Result<()> {
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidWaveNumber(k));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidRelaxationTime(tau));
    }
    Ok(())
}

/// Dense operator `A = −ik·diag(v) − (1/τ)(I − e eᵀ)`.
pub fn build_operator(k: f64, tau: f64, grid: &VelocityGrid) -> Result<DiscreteOperator> {
    check_parameters(k, tau)?;
    let q = grid.len();
    let sqrt_weights: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let inv_tau = 1.0 / tau;
    let matrix = DMatrix::from_fn(q, q, |i, j| {
        let mut a = Complex64::new(inv_tau * sqrt_weights[i] * sqrt_weights[j], 0.0);
        if i == j {
            a += Complex64::new(-inv_tau, -k * grid.nodes[i]);
        }
        a
    });
    Ok(DiscreteOperator {
        k,
        tau,
        nodes: grid.nodes.clone(),
        sqrt_weights,
        matrix,
    })
}

fn schur_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let q = m.nrows();
    // A modest cap first, then a much larger one before giving up.
    for max_iter in [30 * q, 1000 * q] {
        if let Some(schur) = Schur::try_new(m.clone(), f64::EPSILON, max_iter) {
            if let Some(ev) = schur.eigenvalues() {
                return Ok(ev.iter().copied().collect());
            }
        }
    }
    Err(Error::EigenNonConvergence(q))
}

/// All eigenvalues with hydrodynamic-mode identification.
///
/// Eigenvalues come from a Hessenberg/shifted-QR Schur decomposition and are
/// then refined by Newton steps on the discrete dispersion relation when
/// `k > 0`. At `k = 0` the operator is `−(1/τ)(I − eeᵀ)` and its spectrum is
/// returned in closed form.
pub fn operator_spectrum(op: &DiscreteOperator) -> Result<SpectrumResult> {
    let mut eigenvalues: Vec<Complex64> = if op.k > 0.0 {
        eigenmodes(op)?.iter().map(|m| op.mode_lambda(m)).collect()
    } else {
        let mut ev = vec![Complex64::new(-1.0 / op.tau, 0.0); op.len()];
        ev[0] = Complex64::new(0.0, 0.0);
        ev
    };
    eigenvalues.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));

    let essential_line = -1.0 / op.tau;
    let top = eigenvalues[0];
    let cluster_max_re = eigenvalues.get(1).map_or(f64::NEG_INFINITY, |l| l.re);
    let hydrodynamic = (top.re - cluster_max_re >= HYDRODYNAMIC_GAP / op.tau).then_some(top);
    let skip = usize::from(hydrodynamic.is_some());
    let cluster_spread = eigenvalues
        .iter()
        .skip(skip)
        .map(|l| (l.re - essential_line).abs())
        .fold(0.0, f64::max);

    Ok(SpectrumResult {
        eigenvalues,
        hydrodynamic,
        essential_line,
        cluster_max_re,
        cluster_spread,
    })
}

/// Schur eigenvalues refined into pole-relative form (`k > 0`).
pub(crate) fn eigenmodes(op: &DiscreteOperator) -> Result<Vec<Mode>> {
    Ok(schur_eigenvalues(&op.matrix)?
        .into_iter()
        .map(|l| op.locate_mode(l))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetic::gauss_hermite_grid;

    #[test]
    fn projection_is_idempotent() {
        let g = gauss_hermite_grid(16).unwrap();
        let op = build_operator(0.5, 1.0, &g).unwrap();
        let p = op.projection();
        assert!((&p * &p - &p).abs().max() <= 1e-12);
    }

    #[test]
    fn structured_apply_matches_dense() {
        let g = gauss_hermite_grid(12).unwrap();
        let op = build_operator(0.7, 0.8, &g).unwrap();
        let u: Vec<Complex64> = (0..12)
            .map(|j| Complex64::new((j as f64).sin(), (j as f64 * 0.3).cos()))
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); 12];
        op.apply(&u, &mut out);
        let dense = &op.matrix * nalgebra::DVector::from_vec(u);
        for j in 0..12 {
            assert!((out[j] - dense[j]).norm() <= 1e-14);
        }
    }

    #[test]
    fn trace_identity() {
        let q = 32;
        let g = gauss_hermite_grid(q).unwrap();
        let op = build_operator(0.9, 2.0, &g).unwrap();
        let expected = -((q - 1) as f64) / 2.0;
        let tr = op.matrix.trace();
        assert!((tr.re - expected).abs() <= 1e-12);
        assert!(tr.im.abs() <= 1e-12);
    }

    #[test]
    fn zero_wave_number_spectrum() {
        let q = 24;
        let g = gauss_hermite_grid(q).unwrap();
        let tau = 0.5;
        let op = build_operator(0.0, tau, &g).unwrap();
        let s = operator_spectrum(&op).unwrap();
        assert_eq!(s.eigenvalues[0], Complex64::new(0.0, 0.0));
        assert!(s.eigenvalues[1..].iter().all(|&l| l == Complex64::new(-2.0, 0.0)));
        assert_eq!(s.hydrodynamic, Some(s.eigenvalues[0]));
        // the dense solver agrees with the closed form
        let mut dense = schur_eigenvalues(&op.matrix).unwrap();
        dense.sort_by(|a, b| b.re.total_cmp(&a.re));
        assert!(dense[0].norm() <= 1e-12);
        for l in &dense[1..] {
            assert!((l + 1.0 / tau).norm() <= 1e-12);
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        let g = gauss_hermite_grid(4).unwrap();
        assert!(build_operator(-1.0, 1.0, &g).is_err());
        assert!(build_operator(1.0, 0.0, &g).is_err());
    }
}
