//! Discrete-velocity solution of the kinetic model in Fourier space.

mod operator;
mod quadrature;
mod simulate;

pub use operator::{
    build_operator, operator_spectrum, DiscreteOperator, SpectrumResult, HYDRODYNAMIC_GAP,
};
pub use quadrature::{gauss_hermite_grid, VelocityGrid, MAX_VELOCITIES, MIN_VELOCITIES};
pub use simulate::{density_from_spectrum, evolve_closure, simulate_decay, DecayFit};

/// Default velocity count.
pub const DEFAULT_VELOCITIES: usize = 64;
/// Default integration horizon in units of `τ`.
pub const DEFAULT_T_END_OVER_TAU: f64 = 40.0;

/// Step size that keeps classical Runge-Kutta well inside its stability
/// region: at most `0.01τ` and at most `1/(k·v_max + 1/τ)`.
pub fn default_time_step(k: f64, tau: f64, grid: &VelocityGrid) -> f64 {
    let stiffness = k * grid.max_speed() + 1.0 / tau;
    f64::min(0.01 * tau, 1.0 / stiffness)
}
