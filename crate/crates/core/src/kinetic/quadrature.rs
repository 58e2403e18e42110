//! Gauss-Hermite rules for the unit-variance Gaussian weight
//! `e^{−v²/2}/√(2π)`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::{Error, Result};

pub const MIN_VELOCITIES: usize = 2;
pub const MAX_VELOCITIES: usize = 256;

/// Velocity nodes and weights; the weights sum to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VelocityGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl VelocityGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ ω_j v_j^p`.
    pub fn moment(&self, p: i32) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| w * v.powi(p))
            .sum()
    }

    pub fn max_speed(&self) -> f64 {
        self.nodes.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
    }
}

/// Orthonormal Hermite values `p_0(v)..p_{n}(v)` for the standard normal
/// measure: `p_{m+1} = (v p_m − √m p_{m−1}) / √(m+1)`.
fn orthonormal_hermite(v: f64, n: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(1.0);
    if n >= 1 {
        p.push(v);
    }
    for m in 1..n {
        let next = (v * p[m] - (m as f64).sqrt() * p[m - 1]) / ((m + 1) as f64).sqrt();
        p.push(next);
    }
    p
}

/// Q-point rule: Golub-Welsch eigenvalues of the Jacobi matrix (off-diagonal
/// `√n`), Newton-refined on `p_Q`, with Christoffel weights
/// `ω_j = 1/Σ_{n<Q} p_n(v_j)²`.
pub fn gauss_hermite_grid(q: usize) -> Result<VelocityGrid> {
    if !(MIN_VELOCITIES..=MAX_VELOCITIES).contains(&q) {
        return Err(Error::VelocityCount(q));
    }
    let mut jacobi = DMatrix::<f64>::zeros(q, q);
    for n in 1..q {
        let b = (n as f64).sqrt();
        jacobi[(n - 1, n)] = b;
        jacobi[(n, n - 1)] = b;
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);

    let sqrt_q = (q as f64).sqrt();
    for v in nodes.iter_mut() {
        for _ in 0..3 {
            let p = orthonormal_hermite(*v, q);
            let step = p[q] / (sqrt_q * p[q - 1]);
            if !step.is_finite() {
                break;
            }
            *v -= step;
        }
    }

    // Enforce the exact symmetry v_j = −v_{Q−1−j}.
    for j in 0..q / 2 {
        let m = 0.5 * (nodes[q - 1 - j] - nodes[j]);
        nodes[j] = -m;
        nodes[q - 1 - j] = m;
    }
    if q % 2 == 1 {
        nodes[q / 2] = 0.0;
    }

    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&v| {
            let p = orthonormal_hermite(v, q - 1);
            1.0 / p.iter().map(|x| x * x).sum::<f64>()
        })
        .collect();
    for j in 0..q / 2 {
        let m = 0.5 * (weights[j] + weights[q - 1 - j]);
        weights[j] = m;
        weights[q - 1 - j] = m;
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);

    Ok(VelocityGrid { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule() {
        let g = gauss_hermite_grid(2).unwrap();
        assert!((g.nodes[0] + 1.0).abs() < 1e-15 && (g.nodes[1] - 1.0).abs() < 1e-15);
        assert!((g.weights[0] - 0.5).abs() < 1e-15 && (g.weights[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn moments() {
        let g = gauss_hermite_grid(64).unwrap();
        assert!((g.moment(0) - 1.0).abs() <= 1e-14);
        assert!((g.moment(2) - 1.0).abs() <= 1e-12);
        for q in [3, 5, 17, 100, 256] {
            let g = gauss_hermite_grid(q).unwrap();
            assert!((g.moment(4) - 3.0).abs() <= 1e-12, "Q = {q}");
            assert!(g.moment(1).abs() <= 1e-14);
        }
    }

    #[test]
    fn degree_of_exactness() {
        // Σ ω v^{2m} = (2m−1)!! for 2m ≤ 2Q−1
        let g = gauss_hermite_grid(8).unwrap();
        let mut df = 1.0;
        for m in 1..8 {
            df *= (2 * m - 1) as f64;
            let got = g.moment(2 * m);
            assert!((got - df).abs() <= 1e-12 * df, "m = {m}");
        }
    }

    #[test]
    fn out_of_range() {
        assert_eq!(gauss_hermite_grid(1), Err(Error::VelocityCount(1)));
        assert_eq!(gauss_hermite_grid(257), Err(Error::VelocityCount(257)));
    }
}
